"""Detection of inheritance pathologies, with machine-applicable repairs.

Three pathologies are detected, none of which requires executing a plan:

* **exception** — an heir's own property contradicts one arriving crisply
  (same name, same type, different value).  Construction would abort on
  this; detection reports it and suggests the narrowed selection that
  avoids it.
* **ambiguity** — two parallel sources each pass down a same-named
  property carrying different knowledge, so which copy the heir should
  trust is undecided.  Construction succeeds (both copies are kept,
  identity-distinct), but flattening would silently prefer one; the
  suggestion keeps the first source's copy explicitly, with one
  alternative per other contributor.
* **redundancy** — the same knowledge reaches the heir more than once
  (similar members from several levels or sources), or, when the caller
  states which inherited names are actually required, everything arriving
  beyond that list.  The suggestion narrows selections so the surplus
  stops flowing.

Suggestions are full plans, directly executable in place of the original.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .inheritance import (
    InheritancePlan,
    Selection,
    SelectionMode,
    View,
    _apply_selection,
    _declared_entries,
    _exception_conflicts,
    _heir_entries,
    _restricted_selection,
)
from .model import (
    DegreedMember,
    MemberKind,
    Network,
    OodnError,
    format_value,
)


class RequirementError(OodnError):
    """A stated requirement names members the plan cannot deliver."""


@dataclass(frozen=True)
class Diagnostic:
    """One detected pathology on one plan."""

    kind: str
    plan: str
    subjects: tuple[str, ...]
    members: tuple[str, ...]
    message: str
    suggestion: InheritancePlan | None = None
    alternatives: tuple[InheritancePlan, ...] = ()

    def render(self) -> str:
        lines = [f"{self.kind} in plan [{self.plan}]"]
        lines.append(f"  members: {', '.join(self.members)}")
        lines.append(f"  {self.message}")
        if self.suggestion is not None:
            lines.append(f"  suggestion: {self.suggestion.describe()}")
        else:
            lines.append("  suggestion: none")
        for alternative in self.alternatives:
            lines.append(f"  alternative: {alternative.describe()}")
        return "\n".join(lines)


def render_report(diagnostics: Sequence[Diagnostic]) -> str:
    if not diagnostics:
        return "no findings"
    count = len(diagnostics)
    noun = "finding" if count == 1 else "findings"
    body = "\n".join(d.render() for d in diagnostics)
    return f"{count} {noun}\n{body}"


# ---------------------------------------------------------------------------
# Shared plumbing
# ---------------------------------------------------------------------------


def _fold_chain(plan: InheritancePlan, net: Network) -> list[tuple[str, str, View, View]]:
    """Walk a chain, yielding (parent, child, parent_view, taken) per link.

    Unlike construction, the walk never aborts: a contradicted link still
    passes its members upward so that every link gets inspected.
    """
    order = plan.participants_root_first()
    links: list[tuple[str, str, View, View]] = []
    view: View = {e.identity: e for e in _declared_entries(net, order[0])}
    for parent, child in zip(order, order[1:]):
        taken = _apply_selection(view, plan.selection_for(parent), parent)
        links.append((parent, child, view, taken))
        own = (
            _heir_entries(net, child)
            if child == plan.heir
            else _declared_entries(net, child)
        )
        view = dict(taken)
        for entry in own:
            view[entry.identity] = entry
    return links


def _parallel_takens(
    plan: InheritancePlan, net: Network
) -> list[tuple[str, View, View]]:
    """(source, source_view, taken) per parallel source."""
    result = []
    for source, selection in plan.sources:
        view: View = {e.identity: e for e in _declared_entries(net, source)}
        result.append((source, view, _apply_selection(view, selection, source)))
    return result


def _arrivals(plan: InheritancePlan, net: Network) -> list[DegreedMember]:
    """Everything reaching the heir from below, in arrival order."""
    if plan.chain:
        links = _fold_chain(plan, net)
        return list(links[-1][3].values())
    merged: dict[tuple[str, str], DegreedMember] = {}
    for _, _, taken in _parallel_takens(plan, net):
        for identity, entry in taken.items():
            existing = merged.get(identity)
            if existing is None or entry.degree < existing.degree:
                merged[identity] = entry
    return list(merged.values())


def _value_text(entry: DegreedMember) -> str:
    member = entry.member
    if member.value_type is None:
        return "<method>"
    return format_value(member.value_type, member.value)


def _with_selection(
    plan: InheritancePlan, source: str, selection: Selection | None
) -> InheritancePlan | None:
    """The plan with one source's selection replaced, or dropped when None."""
    if selection is None:
        remaining = tuple(
            (name, sel) for name, sel in plan.sources if name != source
        )
        if not remaining:
            return None
        if plan.chain and len(remaining) != len(plan.sources):
            return None
        return replace(plan, sources=remaining)
    return replace(
        plan,
        sources=tuple(
            (name, selection if name == source else sel)
            for name, sel in plan.sources
        ),
    )


# ---------------------------------------------------------------------------
# Detectors
# ---------------------------------------------------------------------------


def detect_exception(plan: InheritancePlan, net: Network) -> list[Diagnostic]:
    """Crisp arrivals that contradict an own property, link by link."""
    diagnostics: list[Diagnostic] = []
    if plan.chain:
        inspected = _fold_chain(plan, net)
    else:
        inspected = [
            (source, plan.heir, view, taken)
            for source, view, taken in _parallel_takens(plan, net)
        ]
    for parent, child, parent_view, taken in inspected:
        own = (
            _heir_entries(net, child)
            if child == plan.heir
            else _declared_entries(net, child)
        )
        conflicts = _exception_conflicts(own, taken)
        if not conflicts:
            continue
        names = tuple(sorted({name for name, _, _ in conflicts}))
        narrowed = _restricted_selection(
            plan.selection_for(parent), parent_view, set(names)
        )
        suggestion = _with_selection(plan, parent, narrowed)
        detail = "; ".join(
            f"{name}: own {local.member.display()}={_value_text(local)} against "
            f"arriving {arriving.member.display()}={_value_text(arriving)}"
            for name, local, arriving in conflicts
        )
        diagnostics.append(
            Diagnostic(
                kind="exception",
                plan=plan.describe(),
                subjects=(parent, child),
                members=names,
                message=(
                    f"{child!r} contradicts members inherited crisply from "
                    f"{parent!r}: {detail}"
                ),
                suggestion=suggestion,
            )
        )
    return diagnostics


def detect_ambiguity(plan: InheritancePlan, net: Network) -> list[Diagnostic]:
    """Same-named, differently-valued members arriving from parallel sources."""
    if plan.chain or len(plan.sources) < 2:
        return []
    takens = _parallel_takens(plan, net)
    by_name: dict[str, list[tuple[str, DegreedMember]]] = {}
    for source, _, taken in takens:
        for entry in taken.values():
            by_name.setdefault(entry.member.name, []).append((source, entry))
    diagnostics = []
    for name in sorted(by_name):
        contributions = by_name[name]
        sources_involved = []
        for source, _ in contributions:
            if source not in sources_involved:
                sources_involved.append(source)
        if len(sources_involved) < 2:
            continue
        keys = {entry.member.similarity_key() for _, entry in contributions}
        if len(keys) < 2:
            continue

        def keep_copy_of(kept: str) -> InheritancePlan | None:
            candidate: InheritancePlan | None = plan
            for source, view, _ in takens:
                if source == kept or source not in sources_involved:
                    continue
                if candidate is None:
                    return None
                narrowed = _restricted_selection(
                    candidate.selection_for(source), view, {name}
                )
                candidate = _with_selection(candidate, source, narrowed)
            return candidate

        suggestion = keep_copy_of(sources_involved[0])
        alternatives = tuple(
            alt
            for kept in sources_involved[1:]
            if (alt := keep_copy_of(kept)) is not None
        )
        detail = "; ".join(
            f"{source} passes {entry.member.display()}={_value_text(entry)}"
            for source, entry in contributions
        )
        diagnostics.append(
            Diagnostic(
                kind="ambiguity",
                plan=plan.describe(),
                subjects=tuple(sources_involved),
                members=(name,),
                message=(
                    f"{name!r} arrives from {len(sources_involved)} sources with "
                    f"conflicting content: {detail}"
                ),
                suggestion=suggestion,
                alternatives=alternatives,
            )
        )
    return diagnostics


def detect_redundancy(
    plan: InheritancePlan,
    net: Network,
    required: Sequence[str] | None = None,
) -> list[Diagnostic]:
    """Knowledge arriving at the heir that adds nothing.

    Without ``required``: similar members arriving more than once.  With
    ``required``: every arriving name outside the required list, as a
    single finding whose suggestion narrows the heir-facing selections to
    exactly what was asked for.
    """
    arrivals = _arrivals(plan, net)
    if required is not None:
        return _surplus_against_required(plan, net, arrivals, list(required))

    groups: dict[tuple, list[DegreedMember]] = {}
    for entry in arrivals:
        groups.setdefault(entry.member.similarity_key(), []).append(entry)
    source_order = [name for name, _ in plan.sources]
    diagnostics = []
    flagged = [key for key, entries in groups.items() if len(entries) > 1]
    for key in sorted(flagged, key=lambda k: (k[1], str(k))):
        entries = groups[key]
        name = entries[0].member.name
        owners = sorted(
            {entry.member.owner for entry in entries},
            key=lambda owner: (
                source_order.index(owner) if owner in source_order else -1
            ),
        )
        keep = owners[0]
        candidate: InheritancePlan | None = plan
        for owner in owners[1:]:
            if owner not in source_order or candidate is None:
                candidate = None
                break
            view: View = {
                e.identity: e for e in _declared_entries(net, owner)
            }
            narrowed = _restricted_selection(
                candidate.selection_for(owner), view, {name}
            )
            candidate = _with_selection(candidate, owner, narrowed)
        diagnostics.append(
            Diagnostic(
                kind="redundancy",
                plan=plan.describe(),
                subjects=tuple(owners),
                members=(name,),
                message=(
                    f"{name!r} arrives {len(entries)} times with the same content "
                    f"(declared by {', '.join(owners)}); the copies beyond "
                    f"{keep!r}'s add nothing"
                ),
                suggestion=candidate,
            )
        )
    return diagnostics


def _surplus_against_required(
    plan: InheritancePlan,
    net: Network,
    arrivals: list[DegreedMember],
    required: list[str],
) -> list[Diagnostic]:
    available: list[str] = []
    for entry in arrivals:
        if entry.member.name not in available:
            available.append(entry.member.name)
    missing = [name for name in required if name not in available]
    if missing:
        raise RequirementError(
            f"required members not delivered by this plan: {', '.join(sorted(missing))}"
        )
    surplus = tuple(sorted(name for name in available if name not in required))
    if not surplus:
        return []

    if plan.chain:
        heir_source = plan.sources[0][0]
        links = _fold_chain(plan, net)
        heir_view = links[-1][2]
        selection = plan.selection_for(heir_source)
        kept = []
        seen: set[str] = set()
        for entry in heir_view.values():
            name = entry.member.name
            if name in required and name not in seen:
                seen.add(name)
                kept.append((name, selection.degree_for(name)))
        suggestion = _with_selection(
            plan, heir_source, Selection(SelectionMode.LISTED, tuple(kept))
        )
    else:
        candidate: InheritancePlan | None = plan
        for source, view, _ in _parallel_takens(plan, net):
            if candidate is None:
                break
            selection = candidate.selection_for(source)
            kept = []
            seen = set()
            for entry in view.values():
                name = entry.member.name
                if name in required and name not in seen:
                    seen.add(name)
                    kept.append((name, selection.degree_for(name)))
            narrowed = (
                Selection(SelectionMode.LISTED, tuple(kept)) if kept else None
            )
            candidate = _with_selection(candidate, source, narrowed)
        suggestion = candidate

    return [
        Diagnostic(
            kind="redundancy",
            plan=plan.describe(),
            subjects=(plan.heir,),
            members=surplus,
            message=(
                f"{len(surplus)} inherited members are not in the required list: "
                f"{', '.join(surplus)}"
            ),
            suggestion=suggestion,
        )
    ]


def diagnose_all(
    net: Network, required: Sequence[str] | None = None
) -> list[Diagnostic]:
    """All findings over every declared plan, in declaration order."""
    findings: list[Diagnostic] = []
    for plan in net.plans:
        findings.extend(detect_exception(plan, net))
        findings.extend(detect_redundancy(plan, net, required=required))
        findings.extend(detect_ambiguity(plan, net))
    return findings
