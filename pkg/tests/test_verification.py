"""Orbit fragments, paradoxical reassembly, witnesses, and full runs."""

from fractions import Fraction

import pytest

from paradoxcert.certificates import derive
from paradoxcert.errors import SeedFixedError, VerificationError
from paradoxcert.freegroup import default_absorber, get_pair
from paradoxcert.linalg import Matrix
from paradoxcert.scalars import RING_RATIONAL
from paradoxcert.spaces import SpherePoint
from paradoxcert.verification import (
    EquidecompWitness,
    RunConfig,
    WitnessPiece,
    classify,
    equidecomp_verify,
    orbit_fragment,
    piece_sizes,
    reassembly_check,
    verify,
)
from paradoxcert.words import A, B, ball_size, classify_prefix

SEED = (Fraction(1), Fraction(2), Fraction(3))


def test_fragment_counts_match_the_ball():
    for depth in (1, 2, 3):
        frag = orbit_fragment("sphere(2)", SEED, "so3-ab", depth)
        assert len(frag.words) == ball_size(depth) == 2 * 3 ** depth - 1
        # all points distinct by construction
        assert len(frag.index) == len(frag.words)


def test_fragment_pieces_partition():
    frag = orbit_fragment("sphere(2)", SEED, "so3-ab", 3)
    sizes = piece_sizes(frag)
    assert sizes["identity"] == 1
    assert sizes["W(a)"] == sizes["W(A)"] == sizes["W(b)"] == sizes["W(B)"]
    assert sum(sizes.values()) == len(frag.words)


def test_fixed_seed_is_reported_with_the_word():
    # the b generator fixes the first coordinate axis
    e1 = (Fraction(1), Fraction(0), Fraction(0))
    with pytest.raises(SeedFixedError) as err:
        orbit_fragment("sphere(2)", e1, "so3-ab", 2)
    assert err.value.word_text == "b"


def test_projective_fragment():
    frag = orbit_fragment("proj(R,3)", SEED, "so3-ab", 2)
    assert len(frag.words) == ball_size(2)
    assert frag.kind == "line"


def test_reassembly_two_piece_cover():
    frag = orbit_fragment("sphere(2)", SEED, "so3-ab", 3)
    result = reassembly_check(frag)
    assert result["ok"], result
    for side in ("a", "b"):
        stats = result["sides"][side]
        assert stats["targets"] == ball_size(2)
        assert stats["covered"] == stats["targets"]
        assert stats["multiplicity_one"]


def test_reassembly_depth_one_is_trivial():
    frag = orbit_fragment("sphere(2)", SEED, "so3-ab", 1)
    result = reassembly_check(frag)
    assert result["ok"]
    assert result["sides"]["a"]["targets"] == 1


def test_reassembly_fails_with_the_wrong_translate():
    frag = orbit_fragment("sphere(2)", SEED, "so3-ab", 3)
    # translating the W(a^-1) piece by b instead of a breaks the cover
    result = reassembly_check(frag, translate_a=B)
    assert not result["ok"]
    assert not result["sides"]["a"]["ok"]
    assert result["sides"]["b"]["ok"]


def test_equidecomp_witness_passes_on_a_partition():
    pts = [SpherePoint.from_vector((Fraction(x), Fraction(y), Fraction(1)))
           for x in range(-2, 3) for y in range(-2, 3)]
    witness = EquidecompWitness(pieces=(
        WitnessPiece("x<0", lambda p: p.direction[0] * p.sign < 0, None),
        WitnessPiece("x>=0", lambda p: p.direction[0] * p.sign >= 0, None),
    ))
    result = equidecomp_verify(witness, pts)
    assert result["ok"], result
    assert result["points"] == len(pts)


def test_equidecomp_witness_rejects_overlap():
    pts = [SpherePoint.from_vector((Fraction(1), Fraction(0), Fraction(0)))]
    witness = EquidecompWitness(pieces=(
        WitnessPiece("all", lambda p: True, None),
        WitnessPiece("also-all", lambda p: True, None),
    ))
    result = equidecomp_verify(witness, pts)
    assert not result["ok"]
    assert "2 pieces" in result["failures"][0]


def test_equidecomp_witness_rejects_gaps():
    pts = [SpherePoint.from_vector((Fraction(1), Fraction(0), Fraction(0)))]
    witness = EquidecompWitness(pieces=(
        WitnessPiece("none", lambda p: False, None),
    ))
    result = equidecomp_verify(witness, pts)
    assert not result["ok"]


def test_equidecomp_witness_checks_the_image():
    g = default_absorber()
    pts = [SpherePoint.from_vector((Fraction(1), Fraction(0), Fraction(0)))]
    witness = EquidecompWitness(
        pieces=(WitnessPiece("moved", lambda p: True, g),),
        target_predicate=lambda q: False)
    result = equidecomp_verify(witness, pts)
    assert not result["ok"]
    assert "left the target" in result["failures"][0]


def test_run_config_defaults():
    cfg = RunConfig()
    assert (cfg.depth, cfg.samples, cfg.seed) == (6, 500, 42)
    assert cfg.mode == "exact" and cfg.exact
    assert cfg.tol == 1e-9
    assert cfg.absorber_bound == 50


def test_verify_small_sphere_run():
    root = derive("sphere(2)")
    report = verify(root, depth=3, samples=30)
    assert report["overall"] == "pass"
    assert report["structure"]["ok"]
    assert report["provenance"]["ok"]
    assert report["provenance"]["labelled_samples"] > 0
    assert report["totals"]["failures"] == 0
    rules = [n["rule"] for n in report["nodes"]]
    assert rules == ["CountableAbsorb", "SubgroupLift", "FreeTransport",
                     "BaseF2"]


def test_verify_accepts_config_overrides():
    root = derive("sphere(2)")
    report = verify(root, RunConfig(depth=2, samples=10))
    assert report["config"]["depth"] == 2
    assert report["config"]["samples"] == 10


def test_verify_is_deterministic():
    import json
    root = derive("proj(R,3)")
    r1 = verify(root, depth=3, samples=25)
    r2 = verify(root, depth=3, samples=25)
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_verify_flags_structural_damage():
    import dataclasses
    root = derive("sphere(2)")
    shear = Matrix([(Fraction(1), Fraction(1), Fraction(0)),
                    (Fraction(0), Fraction(1), Fraction(0)),
                    (Fraction(0), Fraction(0), Fraction(1))])
    bad = dataclasses.replace(root, params={**root.params, "absorber": shear})
    report = verify(bad, depth=2, samples=5)
    assert report["overall"] == "fail"
    assert not report["structure"]["ok"]
    assert report["nodes"] == []


def test_classify_labels_of_fragment_points():
    from paradoxcert.verification import CertVerifier
    root = derive("sphere(2)")
    v = CertVerifier(root, RunConfig(depth=3, samples=10))
    frag = orbit_fragment("sphere(2)", root.children[0].children[0]
                          .params["seed"], "so3-ab", 3)
    for w in frag.words[:20]:
        assert v.classify(frag.point_for(w)) == classify_prefix(w)


def test_classify_marks_absorbed_points():
    from paradoxcert.freegroup import exceptional_set
    from paradoxcert.spaces import act
    from paradoxcert.verification import CertVerifier
    root = derive("sphere(2)")
    v = CertVerifier(root, RunConfig(depth=3, samples=10))
    pair = get_pair("so3-ab")
    g = default_absorber()
    axis = sorted(exceptional_set(pair, 1), key=repr)[0]
    p = SpherePoint(1, axis, True)
    # the axis itself and its first few absorber images all label "absorbed"
    for _ in range(4):
        assert v.classify(p) == "absorbed"
        p = act(g, p)
