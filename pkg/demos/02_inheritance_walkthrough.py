"""How inheritance restructures knowledge instead of copying it.

Four walks: a chain, two parents at once, taking only part of a parent, and
taking a member at reduced strength. Each walk shows the resulting layered
class and how any participant's view is recovered from it.

Run me directly:

    python3 demos/02_inheritance_walkthrough.py
"""

from __future__ import annotations

from oodn import classify_plan, decompose, inherit, member_line
from oodn.dsl import parse_network, serialize_hetclass

TEXT = """
class Vehicle {
  prop wheels: int = 4;
  prop powered: bool = true;
  method start();
  method stop();
}

class Truck {
  prop payload: real = 3.5;
  prop axles: int = 3;
  method start();
}

class FireTruck {
  prop color: text = "red";
  method siren();
}

class Boat {
  prop draft: real = 1.2;
  method moor();
}
"""


def show(title: str, body: str) -> None:
    print(f"\n=== {title} ===")
    print(body)


def walk(description: str, plan_text: str, *views: str) -> None:
    net = parse_network(TEXT + plan_text)
    plan = net.plans[0]
    het = inherit(plan, net)
    show(
        f"{description}  [{classify_plan(plan, net).render()}]",
        serialize_hetclass(het),
    )
    for name in views:
        flattened = decompose(het, name)
        print(f"\n{name}, flattened back out ({len(flattened)} members):")
        for entry in flattened:
            print(f"  {member_line(entry)}")


# 1. A chain: FireTruck refines Truck refines Vehicle. Knowledge shared by
#    everyone sinks into the core; each level keeps only what it adds.
#    Note the identical start() declarations merging when flattened.
walk(
    "chain: FireTruck <- Truck <- Vehicle",
    "FireTruck inherits Truck inherits Vehicle;",
    "Vehicle",
    "FireTruck",
)

# 2. Two parents at once: an amphibious vehicle takes from Truck and Boat.
#    The parents stay in separate layers; the heir's own layer depends on
#    both. Nothing is common to Truck and Boat, so the core is empty.
walk(
    "two parents: Amphibian <- Truck, Boat",
    "Amphibian inherits Truck, Boat;",
    "Amphibian",
)

# 3. Taking only part of a parent: the selection lists what travels; the
#    rest remains visible only to the parent itself.
walk(
    "partial take: Trailer picks wheels and stop from Vehicle",
    "Trailer inherits Vehicle (wheels, stop);",
    "Vehicle",
    "Trailer",
)

# 4. Taking a member at reduced strength: powered arrives at 0.3 — the
#    parent still holds it fully, the heir only weakly. The same assertion
#    lives at two degrees, one per audience.
walk(
    "weak take: Glider holds powered at 0.3",
    "Glider inherits Vehicle (powered/0.3);",
    "Glider",
)
