"""Multi-project dependency graphs: construction, NED resolution, diagnostics.

A graph is built from a JSON manifest declaring projects, their roots and
their dependencies. The reserved node name `omnetpp` stands for the simulator
installation itself; it contributes libraries and compile definitions but no
NED folders. All resolution and checking operations are pure functions of the
immutable graph value; the only filesystem access happens at construction
time (metadata extraction and binary-mode probing).
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    CycleError,
    DanglingDependencyError,
    ManifestError,
    UnknownTargetError,
)
from .locator import OmnetppInstallation, locate_installation
from .makemake import ProjectMetadata, TargetKind, extract_project_metadata
from .naming import DEFAULT_NAMING, NamingRule, debug_variant, release_location

OMNETPP_NODE = "omnetpp"

SEVERITY_WARNING = "warning"
SEVERITY_ERROR = "error"


@dataclass
class Diagnostic:
    severity: str  # warning | error
    code: str  # Cycle | DuplicateLibrary | ModeMismatch | DeepIncludesUnsupported | DanglingDependency
    subject: str
    message: str

    def format(self) -> str:
        return f"{self.severity}:{self.code}:{self.subject}:{self.message}"


@dataclass
class ProjectGraph:
    """Named projects with directed dependency edges.

    `edges` has a key for every node, including the installation pseudo-node;
    `nodes` holds the extracted metadata of real projects only.
    `binary_modes` records which build-mode artifacts existed on disk at
    construction time, as (has_release, has_debug) per library node.
    """

    nodes: dict[str, ProjectMetadata] = field(default_factory=dict)
    edges: dict[str, list[str]] = field(default_factory=dict)
    installation: OmnetppInstallation | None = None
    binary_modes: dict[str, tuple[bool, bool]] = field(default_factory=dict)

    def has_node(self, name: str) -> bool:
        return name in self.edges


def load_manifest(path: Path | str) -> dict:
    """Parse a manifest file; shape validation happens in build_graph."""
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ManifestError(f"{path}: manifest must be a JSON object")
    return document


def build_graph(
    manifest: dict,
    base_dir: Path | str = ".",
    rule: NamingRule = DEFAULT_NAMING,
    env_root: str | None = None,
    path_entries: list | tuple = (),
) -> ProjectGraph:
    """Materialize a ProjectGraph from a parsed manifest document.

    Each project entry is resolved through metadata extraction; declared
    dependencies become edges in declaration order; an `omnetpp` entry
    resolves through installation discovery (its optional `omnetpp_root`
    first, then env_root, then path_entries). Relative roots count from
    base_dir, conventionally the manifest's own directory.
    """
    base_dir = Path(base_dir)
    projects = manifest.get("projects")
    if not isinstance(projects, list):
        raise ManifestError("manifest must have a top-level 'projects' array")

    entries: list[dict] = []
    names: set[str] = set()
    for raw in projects:
        if not isinstance(raw, dict):
            raise ManifestError("each project entry must be a JSON object")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise ManifestError("each project entry needs a nonempty 'name'")
        if name in names:
            raise ManifestError(f"duplicate project name '{name}'")
        names.add(name)
        entries.append(raw)

    # Dangling edges are a pure naming problem; report them before touching
    # the filesystem.
    for entry in entries:
        for dep in entry.get("deps", []):
            if dep not in names:
                raise DanglingDependencyError(entry["name"], dep)

    def resolve_dir(value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else base_dir / p

    graph = ProjectGraph()
    for entry in entries:
        name = entry["name"]
        if name == OMNETPP_NODE:
            explicit = entry.get("omnetpp_root")
            graph.installation = locate_installation(
                explicit_root=resolve_dir(explicit) if explicit else None,
                env_root=env_root,
                path_entries=path_entries,
                rule=rule,
            )
            graph.edges[name] = []
            continue
        root_value = entry.get("root")
        if not isinstance(root_value, str) or not root_value:
            raise ManifestError(f"project '{name}' needs a 'root' path")
        root = resolve_dir(root_value)
        makefile = root / entry.get("makefile", "Makefile")
        graph.nodes[name] = extract_project_metadata(makefile, name)
        graph.edges[name] = list(entry.get("deps", []))

    _probe_binary_modes(graph, rule)
    return graph


def _probe_binary_modes(graph: ProjectGraph, rule: NamingRule) -> None:
    for name, meta in graph.nodes.items():
        if meta.invocation.kind is TargetKind.EXECUTABLE:
            continue
        release = release_location(meta, rule)
        graph.binary_modes[name] = (release.is_file(), debug_variant(release).is_file())
    if graph.installation is not None:
        has_release = any(p.release_path for p in graph.installation.libraries)
        has_debug = any(p.debug_path for p in graph.installation.libraries)
        if has_release or has_debug:
            graph.binary_modes[OMNETPP_NODE] = (has_release, has_debug)


def resolve_ned_folders(graph: ProjectGraph, target: str) -> list[Path]:
    """Aggregate NED folders over the target and its dependencies.

    Depth-first pre-order from the target, dependencies in edge order, each
    node visited at most once, duplicates dropped keeping the first
    occurrence. The installation pseudo-node contributes nothing. A back
    edge reachable from the target raises CycleError with the full path.
    """
    if not graph.has_node(target):
        raise UnknownTargetError(f"unknown project '{target}'")
    folders: list[Path] = []
    visited: set[str] = set()
    stack: list[str] = []

    def visit(name: str) -> None:
        if name in stack:
            raise CycleError(stack[stack.index(name):] + [name])
        if name in visited:
            return
        visited.add(name)
        stack.append(name)
        meta = graph.nodes.get(name)
        if meta is not None:
            for folder in meta.ned_folders:
                if folder not in folders:
                    folders.append(folder)
        for dep in graph.edges.get(name, []):
            visit(dep)
        stack.pop()

    visit(target)
    return folders


def reachable_names(graph: ProjectGraph, target: str) -> set[str]:
    """Every node reachable from target, target included. Cycle-tolerant."""
    if not graph.has_node(target):
        raise UnknownTargetError(f"unknown project '{target}'")
    seen = {target}
    frontier = [target]
    while frontier:
        name = frontier.pop()
        for dep in graph.edges.get(name, []):
            if dep not in seen:
                seen.add(dep)
                frontier.append(dep)
    return seen


def topological_order(graph: ProjectGraph) -> list[str]:
    """Dependencies before dependents; ties broken by lexicographic name."""
    # A self-loop keeps its node permanently pending, surfacing as a cycle.
    pending: dict[str, set[str]] = {
        name: set(deps) for name, deps in graph.edges.items()
    }
    dependents: dict[str, list[str]] = {name: [] for name in graph.edges}
    for name, deps in graph.edges.items():
        for dep in set(deps):
            dependents[dep].append(name)

    ready = [name for name, deps in pending.items() if not deps]
    heapq.heapify(ready)
    order: list[str] = []
    done: set[str] = set()
    while ready:
        name = heapq.heappop(ready)
        order.append(name)
        done.add(name)
        for dependent in dependents[name]:
            if dependent in done:
                continue
            pending[dependent].discard(name)
            if not pending[dependent]:
                heapq.heappush(ready, dependent)
    if len(order) != len(graph.edges):
        leftover = sorted(set(graph.edges) - done)
        raise CycleError(_find_cycle(graph.edges, leftover))
    return order


def _find_cycle(edges: dict[str, list[str]], nodes: list[str]) -> list[str]:
    """A concrete cycle path using only `nodes`, for error reporting.

    Callers guarantee a cycle exists within `nodes` (a strongly connected
    component, or the leftover set of an aborted topological sort, which
    always contains every cycle whole).
    """
    within = set(nodes)
    for start in sorted(nodes):
        stack = [start]
        on_stack = {start}
        seen: set[str] = set()

        def walk(name: str) -> list[str] | None:
            seen.add(name)
            for dep in edges.get(name, []):
                if dep not in within:
                    continue
                if dep in on_stack:
                    return stack[stack.index(dep):] + [dep]
                if dep in seen:
                    continue
                stack.append(dep)
                on_stack.add(dep)
                found = walk(dep)
                if found:
                    return found
                on_stack.discard(dep)
                stack.pop()
            return None

        cycle = walk(start)
        if cycle:
            return cycle
    return list(nodes)  # unreachable for genuinely cyclic leftovers


def check_graph(graph: ProjectGraph) -> list[Diagnostic]:
    """All diagnostics for the graph, sorted by (severity, code, subject).

    Cycle errors cover every strongly connected knot (including self-loops).
    DuplicateLibrary warns when two projects reachable from a common
    dependent produce a binary with the same target name from different
    roots, the classic mixed-versions hazard. ModeMismatch warns when some
    nodes only have debug binaries on disk while others only have release
    ones. Deep-include refusals recorded at extraction time are forwarded.
    """
    diagnostics: list[Diagnostic] = []

    for name in sorted(graph.nodes):
        if graph.nodes[name].invocation.deep:
            diagnostics.append(
                Diagnostic(
                    SEVERITY_WARNING,
                    "DeepIncludesUnsupported",
                    name,
                    "project uses deep includes; import-target emission is refused",
                )
            )

    for component in _cyclic_components(graph.edges):
        path = _find_cycle(graph.edges, sorted(component))
        diagnostics.append(
            Diagnostic(
                SEVERITY_ERROR,
                "Cycle",
                ",".join(sorted(component)),
                " -> ".join(path),
            )
        )

    diagnostics.extend(_duplicate_library_warnings(graph))

    release_only = sorted(
        n for n, (rel, dbg) in graph.binary_modes.items() if rel and not dbg
    )
    debug_only = sorted(
        n for n, (rel, dbg) in graph.binary_modes.items() if dbg and not rel
    )
    if release_only and debug_only:
        diagnostics.append(
            Diagnostic(
                SEVERITY_WARNING,
                "ModeMismatch",
                ",".join(sorted(release_only + debug_only)),
                f"release-only binaries: {', '.join(release_only)}; "
                f"debug-only binaries: {', '.join(debug_only)}",
            )
        )

    diagnostics.sort(key=lambda d: (d.severity, d.code, d.subject))
    return diagnostics


def _duplicate_library_warnings(graph: ProjectGraph) -> list[Diagnostic]:
    reach = {name: reachable_names(graph, name) for name in graph.edges}
    by_target: dict[str, list[str]] = {}
    for name, meta in graph.nodes.items():
        by_target.setdefault(meta.invocation.target_name, []).append(name)

    warnings: list[Diagnostic] = []
    for target_name in sorted(by_target):
        producers = sorted(by_target[target_name])
        for i in range(len(producers)):
            for j in range(i + 1, len(producers)):
                a, b = producers[i], producers[j]
                if graph.nodes[a].project_root == graph.nodes[b].project_root:
                    continue
                if any(a in r and b in r for r in reach.values()):
                    warnings.append(
                        Diagnostic(
                            SEVERITY_WARNING,
                            "DuplicateLibrary",
                            f"{a},{b}",
                            f"target '{target_name}' is built from both "
                            f"{graph.nodes[a].project_root.as_posix()} and "
                            f"{graph.nodes[b].project_root.as_posix()}",
                        )
                    )
    return warnings


def _cyclic_components(edges: dict[str, list[str]]) -> list[set[str]]:
    """Strongly connected components of size > 1, plus self-loops (Tarjan)."""
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    components: list[set[str]] = []

    def strongconnect(node: str) -> None:
        index[node] = lowlink[node] = counter[0]
        counter[0] += 1
        stack.append(node)
        on_stack.add(node)
        for succ in edges.get(node, []):
            if succ not in index:
                strongconnect(succ)
                lowlink[node] = min(lowlink[node], lowlink[succ])
            elif succ in on_stack:
                lowlink[node] = min(lowlink[node], index[succ])
        if lowlink[node] == index[node]:
            component: set[str] = set()
            while True:
                member = stack.pop()
                on_stack.discard(member)
                component.add(member)
                if member == node:
                    break
            if len(component) > 1 or node in edges.get(node, []):
                components.append(component)

    for node in sorted(edges):
        if node not in index:
            strongconnect(node)
    return components
