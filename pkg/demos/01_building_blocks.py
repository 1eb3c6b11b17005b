"""Tour of the basic vocabulary: members, degrees, classes, objects, relations.

Run me directly:

    python3 demos/01_building_blocks.py
"""

from __future__ import annotations

from fractions import Fraction

from oodn import (
    DegreedMember,
    HomClass,
    MemberSet,
    ObjectInstance,
    Relation,
    RelationKind,
    ValueType,
    as_degree,
    is_fuzzy,
    make_network,
    materialize,
    member_line,
    method,
    prop,
    validate_network,
)
from oodn.dsl import serialize_homclass


def show(title: str, body: str) -> None:
    print(f"\n=== {title} ===")
    print(body)


# -- Members: each one is a named, owned assertion ---------------------------
#
# A property asserts a typed value; a method asserts a callable signature.
# The owner records which class first declared the assertion, which is what
# keeps copies apart after inheritance mixes several classes together.

weight = prop("weight", ValueType.REAL, Fraction(85, 10), owner="Truck")
honk = method("honk", owner="Truck", params=[("volume", ValueType.INT)])

show(
    "two members",
    "\n".join(member_line(DegreedMember(m)) for m in (weight, honk)),
)

# -- Degrees: how firmly a member is held ------------------------------------
#
# Every member in a class is held to a degree in (0, 1]. Degrees are exact
# rationals: no floating point creeps in, so composed degrees never drift.

half = as_degree("1/2")
third = as_degree("1/3")
show(
    "degrees multiply exactly",
    f"{half} x {third} = {half * third}  (a sixth, exactly)",
)

# -- Classes: a specification of properties plus a signature of methods ------

truck = HomClass(
    "Truck",
    spec=MemberSet([weight, prop("wheels", ValueType.INT, 6, owner="Truck")]),
    sig=MemberSet([honk]),
)
show("a class, in the text form", serialize_homclass(truck))

# -- Networks: classes, objects, relations, and the operation registries -----

net = make_network()
net.classes["Truck"] = truck
net.objects["old_red"] = ObjectInstance("old_red", "Truck", (("wheels", 4),))
net.relations.append(Relation(RelationKind.INSTANCE_OF, "old_red", "Truck"))

findings = validate_network(net)
show(
    "validation findings",
    "\n".join(f.render() for f in findings) or "(none)",
)

# materialize answers: what does this entity actually hold, all told?
# The object's override of "wheels" replaces the class default.
members = materialize(net, "old_red")
show("old_red, materialized", "\n".join(member_line(e) for e in members))

# -- Fuzziness: the whole network is crisp until something graded appears ----

show("is the network fuzzy?", str(is_fuzzy(net)))
net.classes["Truck"] = HomClass(
    "Truck",
    spec=MemberSet(
        [
            weight,
            DegreedMember(
                prop("vintage", ValueType.BOOL, True, owner="Truck"),
                as_degree("0.7"),
            ),
        ]
    ),
    sig=MemberSet([honk]),
)
show("after adding a member held at 0.7", str(is_fuzzy(net)))
