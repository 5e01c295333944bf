#!/usr/bin/env python3
"""Derive, structurally check, and empirically verify one certificate.

Usage: python3 certify.py [descriptor]   (default: flag(R;1,2,3))

The certificate is a finite proof tree: each node names an inference
rule reducing paradoxicality of its space to that of its children, down
to the free-group base case.  Verification replays the tree bottom-up on
exact sample orbits.
"""

import sys

from paradoxcert import RunConfig, check, derive, verify


def main() -> None:
    descriptor = sys.argv[1] if len(sys.argv) > 1 else "flag(R;1,2,3)"
    root = derive(descriptor)
    print(f"certificate for {descriptor}:")
    for path, node in root.walk():
        indent = "  " * (1 + path.count("."))
        print(f"{indent}{node.rule}: {node.space.text}")
    print()

    structural = check(root)
    print(f"structural check: ok={structural['ok']}")

    cfg = RunConfig(depth=5, samples=200)
    report = verify(root, config=cfg)
    print(f"verification at depth {cfg.depth} with {cfg.samples} samples:")
    print(f"  checks:   {report['totals']['checks']:,}")
    print(f"  failures: {report['totals']['failures']}")
    prov = report["provenance"]
    print(f"  provenance: {prov['matched']} of {prov['labelled_samples']} "
          f"labels matched, {prov['unknown']} unknown")
    print(f"  overall:  {report['overall']}")


if __name__ == "__main__":
    main()
