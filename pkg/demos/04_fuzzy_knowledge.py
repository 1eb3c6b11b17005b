"""Graded knowledge: fuzzy values, weakly held members, degreed relations.

A network stops being crisp for exactly three reasons:

  1. an object (or class) holds a set-valued property whose memberships
     are strictly between 0 and 1;
  2. a class holds some member at less than full strength;
  3. a relation is held to a degree.

All grades are exact rationals end to end — parsing, inheritance,
instance checking, and both interchange formats preserve them bit for bit.

Run me directly:

    python3 demos/04_fuzzy_knowledge.py
"""

from __future__ import annotations

from oodn import (
    decompose,
    exploit_instance_check,
    inherit,
    is_fuzzy,
    member_line,
)
from oodn.dsl import export_structured, import_structured, parse_network, serialize


def show(title: str, body: str) -> None:
    print(f"\n=== {title} ===")
    print(body)


# -- Cause 1: a genuinely graded set value ------------------------------------

net = parse_network(
    """
class Person {
  prop build: fuzzy = {tall: 1};
  prop age: int = 30;
}

object sam : Person {
  build = {tall: 0.7, short: 0.3};
}
"""
)
show("object with a graded build", f"fuzzy network: {is_fuzzy(net)}")
build = net.objects["sam"].values()["build"]
for element, membership in build.entries:
    print(f"  {element}: held at exactly {membership}")

# The class itself is crisp: {tall: 1} has no strictly-in-between grade.
crisp_part = parse_network("class Person { prop build: fuzzy = {tall: 1}; }")
show("the class alone", f"fuzzy network: {is_fuzzy(crisp_part)}")

# -- Cause 2: a member held at less than full strength ------------------------

weak = parse_network(
    """
class Draft {
  prop approved: bool = false /0.5;
}
"""
)
entry = weak.classes["Draft"].members().get("Draft", "approved")
show(
    "weakly held member",
    f"{member_line(entry)}\nfuzzy network: {is_fuzzy(weak)}",
)

# -- Cause 3: a relation held to a degree --------------------------------------

related = parse_network(
    """
class Person { prop age: int = 30; }
object ann : Person { }
object ben : Person { }
relation association knows ann -> ben /0.7;
"""
)
rel = related.relations[0]
show(
    "degreed relation",
    f"{rel.source} -{rel.label}-> {rel.target} at {rel.degree}"
    f"\nfuzzy network: {is_fuzzy(related)}",
)

# -- Degrees compose through inheritance, exactly -----------------------------
#
# Taking a member at 1/2 from a parent who itself took it at 1/2 yields
# exactly 1/4 — products of rationals, never rounded floats.

layered = parse_network(
    """
class Rumor { prop claim: text = "it rains"; }
class Retelling { }
class ThirdHand { }

ThirdHand inherits Retelling (claim/1/2) inherits Rumor (claim/1/2);
"""
)
het = inherit(layered.plans[0], layered)
show("degrees along a chain", "1/2 of 1/2 arrives as exactly 1/4:")
for entry in decompose(het, "ThirdHand"):
    print(f"  {member_line(entry)}")

# -- Instance checking returns a grade when the class is graded ---------------

census = parse_network(
    """
class Resident {
  prop street: text = "elm";
  prop years: int = 2;
}

class Established {
  prop street: text = "" /0.9;
  prop years: int = 0 /0.25;
}

object kim : Resident { years = 11; }
"""
)
show(
    "crisp membership",
    f"kim instance of Resident: {exploit_instance_check(census, 'kim', 'Resident')}",
)
grade = exploit_instance_check(census, "kim", "Established")
show(
    "graded membership",
    f"kim instance of Established: {grade} (the weakest required hold)",
)

# -- Exactness survives both interchange formats ------------------------------

for name, network in (("graded object", net), ("degreed relation", related)):
    rebuilt = import_structured(export_structured(network))
    assert serialize(rebuilt) == serialize(network)
    assert is_fuzzy(rebuilt)
show("round-trips", "text and structured forms both preserve every grade")
