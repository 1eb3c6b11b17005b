"""Exploiters and modifiers: the two operation registries of a network.

Exploiters derive new knowledge without touching the network: set union
and intersection over class member sets, instance checking, and
materialization/decomposition re-exported from the model and inheritance
modules.  Modifiers change the network in place; every modifier is atomic
(the change is validated and rolled back entirely if it would leave the
network in an error state) and marks heterogeneous classes built from the
modified entity as stale rather than silently rebuilding them.
"""

from __future__ import annotations

from typing import Sequence

from .inheritance import decompose
from .model import (
    Degree,
    DegreedMember,
    HetClass,
    HomClass,
    Member,
    MemberKind,
    MemberSet,
    Network,
    ObjectInstance,
    OodnError,
    UnknownEntityError,
    Value,
    _declared_properties,
    dedupe_similar,
    materialize,
    validate_network,
    violations_are_fatal,
)


class ModificationRejected(OodnError):
    """A modifier was rolled back; carries the validation findings."""

    def __init__(self, message: str, findings: list) -> None:
        super().__init__(message)
        self.findings = findings


# ---------------------------------------------------------------------------
# Exploiters
# ---------------------------------------------------------------------------


def _entry_key(entry: DegreedMember) -> tuple:
    return (entry.member.similarity_key(), entry.degree)


def exploit_union(
    net: Network, names: Sequence[str], result_name: str = ""
) -> HomClass:
    """Union of the named entities' member sets, similar members merged.

    The first occurrence of each piece of knowledge wins, so the result
    lists members in input order with later similar copies dropped.
    """
    if len(names) < 2:
        raise OodnError("union needs at least two inputs")
    entries: list[DegreedMember] = []
    for name in names:
        entries.extend(materialize(net, name))
    merged = dedupe_similar(entries)
    return HomClass(
        name=result_name,
        spec=merged.properties(),
        sig=merged.methods(),
    )


def exploit_intersection(
    net: Network, names: Sequence[str], result_name: str = ""
) -> HomClass:
    """Members that every named entity holds, matched by similarity and degree."""
    if len(names) < 2:
        raise OodnError("intersection needs at least two inputs")
    sets = [materialize(net, name) for name in names]
    keysets = [{_entry_key(entry) for entry in member_set} for member_set in sets]
    shared = set.intersection(*keysets)
    kept = dedupe_similar(
        entry for entry in sets[0] if _entry_key(entry) in shared
    )
    return HomClass(
        name=result_name,
        spec=kept.properties(),
        sig=kept.methods(),
    )


def exploit_instance_check(
    net: Network, object_name: str, class_name: str
) -> bool | Degree:
    """Would the named object qualify as an instance of the named class?

    The object qualifies when it offers a same-typed property for every
    property the class requires.  A crisp match answers ``True``; when the
    class holds some of those properties only weakly, the answer is the
    smallest such degree — membership is only as strong as the weakest
    requirement.  A missing or differently-typed property answers ``False``.
    """
    if object_name not in net.objects:
        raise UnknownEntityError(f"object {object_name!r} is not declared")
    offered = {
        entry.member.name: entry.member.value_type
        for entry in materialize(net, object_name)
        if entry.member.kind is MemberKind.PROPERTY
    }
    required = [
        entry
        for entry in materialize(net, class_name)
        if entry.member.kind is MemberKind.PROPERTY
    ]
    for entry in required:
        if offered.get(entry.member.name) != entry.member.value_type:
            return False
    weak = [entry.degree for entry in required if entry.degree.is_weak]
    if weak:
        return min(weak)
    return True


# ---------------------------------------------------------------------------
# Modifiers
# ---------------------------------------------------------------------------


def _snapshot(net: Network) -> tuple:
    return (
        dict(net.objects),
        dict(net.classes),
        list(net.relations),
        list(net.plans),
        set(net.stale),
    )


def _restore(net: Network, snap: tuple) -> None:
    net.objects, net.classes, net.relations, net.plans, net.stale = (
        dict(snap[0]),
        dict(snap[1]),
        list(snap[2]),
        list(snap[3]),
        set(snap[4]),
    )


def _commit_or_rollback(net: Network, snap: tuple, action: str) -> None:
    findings = validate_network(net)
    if violations_are_fatal(findings):
        _restore(net, snap)
        rendered = "; ".join(
            f.render() for f in findings if f.severity == "error"
        )
        raise ModificationRejected(
            f"{action} rolled back: {rendered}", findings
        )


def _mark_stale(net: Network, changed: str) -> None:
    """Flag heterogeneous classes whose inputs include the changed entity."""
    for cls in net.classes.values():
        if isinstance(cls, HetClass) and changed in cls.participants:
            net.stale.add(cls.name)
    for plan in net.plans:
        if changed in plan.class_names() and isinstance(
            net.classes.get(plan.heir), HetClass
        ):
            net.stale.add(plan.heir)


def _require_hom(net: Network, class_name: str) -> HomClass:
    cls = net.classes.get(class_name)
    if cls is None:
        raise UnknownEntityError(f"class {class_name!r} is not declared")
    if not isinstance(cls, HomClass):
        raise OodnError(
            f"class {class_name!r} is heterogeneous; re-run its plan instead of "
            f"editing it in place"
        )
    return cls


def modify_add_member(
    net: Network,
    class_name: str,
    member: Member | DegreedMember,
) -> None:
    """Add one member to a homogeneous class, atomically."""
    entry = member if isinstance(member, DegreedMember) else DegreedMember(member)
    cls = _require_hom(net, class_name)
    snap = _snapshot(net)
    try:
        if entry.member.kind is MemberKind.PROPERTY:
            replacement = HomClass(cls.name, cls.spec.extended(entry), cls.sig)
        else:
            replacement = HomClass(cls.name, cls.spec, cls.sig.extended(entry))
    except OodnError as exc:
        raise ModificationRejected(
            f"adding {entry.member.display()} to {class_name!r} rolled back: {exc}",
            [],
        ) from exc
    net.classes[class_name] = replacement
    _commit_or_rollback(net, snap, f"adding {entry.member.display()} to {class_name!r}")
    _mark_stale(net, class_name)


def modify_remove_member(
    net: Network,
    class_name: str,
    member_name: str,
    owner: str | None = None,
) -> None:
    """Remove one member from a homogeneous class, atomically.

    The owner defaults to the class itself; pass it explicitly to remove a
    member the class carries on another owner's behalf.
    """
    cls = _require_hom(net, class_name)
    owner = owner if owner is not None else class_name
    if cls.members().get(owner, member_name) is None:
        raise UnknownEntityError(
            f"class {class_name!r} has no member {member_name!r} owned by {owner!r}"
        )
    snap = _snapshot(net)
    replacement = HomClass(
        cls.name,
        cls.spec.without(owner, member_name),
        cls.sig.without(owner, member_name),
    )
    net.classes[class_name] = replacement
    _commit_or_rollback(
        net, snap, f"removing {member_name!r} from {class_name!r}"
    )
    _mark_stale(net, class_name)


def modify_set_value(
    net: Network,
    target: str,
    member_name: str,
    value: Value,
) -> None:
    """Change a property value on a class, or an override on an object.

    The new value must match the property's declared type; on mismatch (or
    any other resulting invariant breach) the network is left untouched.
    """
    if target in net.objects:
        _set_object_value(net, target, member_name, value)
        return
    cls = _require_hom(net, target)
    entry = cls.spec.get(target, member_name)
    if entry is None:
        candidates = [
            e for e in cls.spec if e.member.name == member_name
        ]
        if len(candidates) == 1:
            entry = candidates[0]
    if entry is None:
        raise UnknownEntityError(
            f"class {target!r} has no property {member_name!r}"
        )
    snap = _snapshot(net)
    old = entry.member
    try:
        replaced = Member(
            MemberKind.PROPERTY,
            old.name,
            old.owner,
            value_type=old.value_type,
            value=value,
        )
    except OodnError as exc:
        raise ModificationRejected(
            f"setting {member_name!r} on {target!r} rolled back: {exc}", []
        ) from exc
    new_spec = MemberSet(
        DegreedMember(replaced, e.degree) if e.identity == entry.identity else e
        for e in cls.spec
    )
    net.classes[target] = HomClass(cls.name, new_spec, cls.sig)
    _commit_or_rollback(net, snap, f"setting {member_name!r} on {target!r}")
    _mark_stale(net, target)


def _set_object_value(
    net: Network, object_name: str, member_name: str, value: Value
) -> None:
    obj = net.objects[object_name]
    cls = net.classes.get(obj.class_ref)
    if cls is not None and member_name not in _declared_properties(cls):
        raise UnknownEntityError(
            f"class {obj.class_ref!r} has no property {member_name!r}"
        )
    snap = _snapshot(net)
    overrides = [
        (name, value if name == member_name else existing)
        for name, existing in obj.member_values
    ]
    if member_name not in {name for name, _ in obj.member_values}:
        overrides.append((member_name, value))
    net.objects[object_name] = ObjectInstance(
        obj.name, obj.class_ref, tuple(overrides)
    )
    _commit_or_rollback(
        net, snap, f"setting {member_name!r} on object {object_name!r}"
    )
    _mark_stale(net, object_name)


# ---------------------------------------------------------------------------
# Default registries
# ---------------------------------------------------------------------------


def default_exploiters() -> dict:
    return {
        "union": exploit_union,
        "intersection": exploit_intersection,
        "instance_check": exploit_instance_check,
        "materialize": materialize,
        "decompose": decompose,
    }


def default_modifiers() -> dict:
    return {
        "add_member": modify_add_member,
        "remove_member": modify_remove_member,
        "set_value": modify_set_value,
    }


def make_network() -> Network:
    """A fresh network with the built-in operation registries installed."""
    return Network(
        exploiters=default_exploiters(),
        modifiers=default_modifiers(),
    )
