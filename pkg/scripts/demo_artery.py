#!/usr/bin/env python3
"""End-to-end walkthrough on a synthetic multi-project workspace.

Builds a disposable OMNeT++-style installation plus three legacy projects
(artery depends on veins, vanetza and the simulator; veins depends on the
simulator), then drives every CLI subcommand against it. Everything happens
under a temporary directory; pass --keep to inspect the tree afterwards.
"""

import argparse
import json
import shutil
import sys
import tempfile
from pathlib import Path

from opp_bridge.cli import main as opp_bridge


def build_workspace(base: Path) -> Path:
    omnetpp = base / "omnetpp-4.6"
    (omnetpp / "include").mkdir(parents=True)
    (omnetpp / "include" / "omnetpp.h").write_text("// demo header\n")
    (omnetpp / "lib").mkdir()
    for lib in ("oppsim", "oppenvir", "oppcmdenv"):
        (omnetpp / "lib" / f"lib{lib}.so").write_text("")
        (omnetpp / "lib" / f"lib{lib}d.so").write_text("")
    (omnetpp / "bin").mkdir()
    for exe in ("omnetpp", "opp_run"):
        path = omnetpp / "bin" / exe
        path.write_text("#!/bin/sh\nexit 0\n")
        path.chmod(0o755)
    (omnetpp / "Makefile.inc").write_text(
        "OMNETPP_VERSION = 4.6\nCFLAGS = -O2 -DNDEBUG -DWITH_PARSIM\n"
    )

    projects = {
        "veins": ("--make-so -o veins -O out -I. -DVEINS_EXPORT", "src/veins\n"),
        "artery": ("--make-so -o artery -O out -Isrc", "src/artery\n"),
        "vanetza": ("--make-so -o vanetza -O out", "# pure C++ library\n"),
    }
    for name, (options, nedfolders) in projects.items():
        root = base / name
        root.mkdir()
        (root / "Makefile").write_text(f"MAKEMAKE_OPTIONS := {options}\n")
        (root / ".nedfolders").write_text(nedfolders)
        for line in nedfolders.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                (root / line).mkdir(parents=True, exist_ok=True)

    manifest = base / "manifest.json"
    manifest.write_text(
        json.dumps(
            {
                "projects": [
                    {"name": "omnetpp", "omnetpp_root": str(omnetpp)},
                    {"name": "vanetza", "root": str(base / "vanetza")},
                    {"name": "veins", "root": str(base / "veins"), "deps": ["omnetpp"]},
                    {
                        "name": "artery",
                        "root": str(base / "artery"),
                        "deps": ["veins", "vanetza", "omnetpp"],
                    },
                ]
            },
            indent=2,
        )
    )
    return manifest


def banner(title: str) -> None:
    print(f"\n=== {title} " + "=" * max(0, 60 - len(title)))


def run(argv: list[str]) -> None:
    banner("opp-bridge " + " ".join(argv[:1]))
    print("$ opp-bridge " + " ".join(argv))
    rc = opp_bridge(argv)
    print(f"(exit {rc})")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--keep", action="store_true", help="keep the temp workspace")
    args = parser.parse_args()

    base = Path(tempfile.mkdtemp(prefix="opp-bridge-demo-"))
    try:
        manifest = build_workspace(base)
        omnetpp_root = str(base / "omnetpp-4.6")

        run(["locate", "--root", omnetpp_root])
        run(["graph", "--manifest", str(manifest)])
        run(["ned-folders", "--manifest", str(manifest), "--target", "artery"])
        run(["import", "--makefile", str(base / "veins" / "Makefile"), "--name", "veins"])
        run(
            [
                "run-script",
                "--manifest",
                str(manifest),
                "--target",
                "artery",
                "--ini",
                "omnetpp.ini",
                "--out",
                str(base / "run_example.sh"),
            ]
        )
        banner("generated run script")
        print((base / "run_example.sh").read_text(), end="")
        run(["check", "--manifest", str(manifest)])
    finally:
        if args.keep:
            print(f"\nworkspace kept at {base}")
        else:
            shutil.rmtree(base, ignore_errors=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
