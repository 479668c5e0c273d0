"""Command-line front end, meant to run during a build's generation phase.

Exit codes: 0 success, 1 warnings only (check), 2 error or usage problem.
Warnings never fail `import`; generation-time tooling must not break builds
on advisories.
"""

from __future__ import annotations

import argparse
import json
import os
import stat
import sys
from pathlib import Path

from .emit import RunCommand, emit_import_target, emit_run_script
from .errors import DanglingDependencyError, OppBridgeError
from .graph import (
    OMNETPP_NODE,
    Diagnostic,
    ProjectGraph,
    build_graph,
    check_graph,
    load_manifest,
    reachable_names,
    resolve_ned_folders,
    topological_order,
)
from .locator import locate_installation
from .makemake import TargetKind, extract_project_metadata
from .naming import release_location


def _path_entries() -> list[str]:
    return [p for p in os.environ.get("PATH", "").split(os.pathsep) if p]


def _graph_from_manifest(manifest_path: str) -> ProjectGraph:
    path = Path(manifest_path)
    document = load_manifest(path)
    return build_graph(
        document,
        base_dir=path.resolve().parent,
        env_root=os.environ.get("OMNETPP_ROOT") or None,
        path_entries=_path_entries(),
    )


def _write_output(content: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(content)
    else:
        Path(out).write_text(content, encoding="utf-8")


def _cmd_locate(args: argparse.Namespace) -> int:
    inst = locate_installation(
        explicit_root=args.root,
        env_root=os.environ.get("OMNETPP_ROOT") or None,
        path_entries=_path_entries(),
    )
    payload = {
        "root": inst.root.as_posix(),
        "version": inst.version,
        "include_dir": inst.include_dir.as_posix(),
        "lib_dir": inst.lib_dir.as_posix(),
        "compile_definitions": inst.compile_definitions,
        "libraries": [
            {
                "name": pair.base_name,
                "release": pair.release_path.as_posix() if pair.release_path else None,
                "debug": pair.debug_path.as_posix() if pair.debug_path else None,
            }
            for pair in inst.libraries
        ],
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_import(args: argparse.Namespace) -> int:
    meta = extract_project_metadata(Path(args.makefile), args.name)
    for token in meta.invocation.unrecognized:
        print(f"warning: unrecognized opp_makemake option {token!r}", file=sys.stderr)
    artifact = emit_import_target(meta)
    _write_output(artifact.content, args.out)
    return 0


def _cmd_ned_folders(args: argparse.Namespace) -> int:
    graph = _graph_from_manifest(args.manifest)
    for folder in resolve_ned_folders(graph, args.target):
        print(folder.as_posix())
    return 0


def _cmd_run_script(args: argparse.Namespace) -> int:
    graph = _graph_from_manifest(args.manifest)
    folders = resolve_ned_folders(graph, args.target)
    if not folders:
        raise OppBridgeError(
            f"target '{args.target}' resolves to no NED folders; "
            "refusing to emit a run script"
        )
    if graph.installation is None:
        raise OppBridgeError(
            "manifest declares no 'omnetpp' project; cannot determine the "
            "opp_run location"
        )
    reachable = reachable_names(graph, args.target)
    libraries = [
        release_location(graph.nodes[name])
        for name in topological_order(graph)
        if name in reachable
        and name != OMNETPP_NODE
        and graph.nodes[name].invocation.kind is TargetKind.SHARED_LIB
    ]
    artifact = emit_run_script(
        RunCommand(
            runner_path=graph.installation.root / "bin" / "opp_run",
            ned_path=folders,
            library_paths=libraries,
            ini_file=args.ini,
        ),
        separator=args.sep,
    )
    _write_output(artifact.content, args.out)
    mode = os.stat(args.out).st_mode
    try:
        os.chmod(args.out, mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)
    except OSError:
        pass  # platform without permission bits
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    graph = _graph_from_manifest(args.manifest)
    lines = ["digraph deps {"]
    for source in sorted(graph.edges):
        for dep in graph.edges[source]:
            lines.append(f'  "{source}" -> "{dep}";')
    lines.append("}")
    print("\n".join(lines))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        graph = _graph_from_manifest(args.manifest)
    except DanglingDependencyError as exc:
        print(Diagnostic("error", "DanglingDependency", exc.source, str(exc)).format())
        return 2
    diagnostics = check_graph(graph)
    for diagnostic in diagnostics:
        print(diagnostic.format())
    if any(d.severity == "error" for d in diagnostics):
        return 2
    if diagnostics:
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opp-bridge",
        description="Bridge legacy OMNeT++ projects into CMake builds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    locate = sub.add_parser("locate", help="discover an OMNeT++ installation")
    locate.add_argument("--root", help="explicit installation root to try first")
    locate.set_defaults(func=_cmd_locate)

    import_ = sub.add_parser("import", help="emit an import-target file for one project")
    import_.add_argument("--makefile", required=True, help="opp_makemake-generated Makefile")
    import_.add_argument("--name", required=True, help="name of the import target")
    import_.add_argument("--out", help="output file (default: stdout)")
    import_.set_defaults(func=_cmd_import)

    ned = sub.add_parser("ned-folders", help="print a target's transitive NED folders")
    ned.add_argument("--manifest", required=True)
    ned.add_argument("--target", required=True)
    ned.set_defaults(func=_cmd_ned_folders)

    run = sub.add_parser("run-script", help="write an opp_run launch script")
    run.add_argument("--manifest", required=True)
    run.add_argument("--target", required=True)
    run.add_argument("--ini", required=True, help="simulation configuration file")
    run.add_argument("--out", required=True)
    run.add_argument("--sep", default=":", help="NED path separator (default ':')")
    run.set_defaults(func=_cmd_run_script)

    graph = sub.add_parser("graph", help="print the dependency graph as DOT")
    graph.add_argument("--manifest", required=True)
    graph.set_defaults(func=_cmd_graph)

    check = sub.add_parser("check", help="print conflict diagnostics")
    check.add_argument("--manifest", required=True)
    check.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OppBridgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
