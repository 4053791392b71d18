"""From a structured requirement to temporal-logic formulas.

Walks one two-sentence requirement through the whole pipeline: parse the DSL,
inspect the captured model, validate it, and compile each primitive to MTL
and CTL, noting which properties a target has to drop.

    python3 demos/01_capture_and_formalise.py
"""

from rcmforge import parse_dsl, property_profile, transform, validate_primitive
from rcmforge.model import sort_codes

SOURCE = """
req "mode-switch" {
  pr {
    scope-pre after sailing termination
    if X is ON for 1 s or Y is ON and Z is ON
    do M shall transition to TRUE after-delay less-than 2 s
  }
  pr {
    scope-act before B_sig is TRUE
    when the acoustical signals E turns to TRUE every 1 s
    do M shall transition to FALSE
  }
}
"""


def show(title: str) -> None:
    print(f"\n{title}\n{'-' * len(title)}")


def main() -> None:
    req = parse_dsl(SOURCE)
    print(f"parsed requirement {req.id!r} with {len(req.primitives)} primitive requirement(s)")

    for n, pr in enumerate(req.primitives, 1):
        show(f"primitive {n}")
        report = validate_primitive(pr)
        print(f"validation : {report.status.value}")
        for issue in report.issues:
            print(f"  note     : {issue.message}")
        print(f"properties : {', '.join(sort_codes(property_profile(pr)))}")

        # Each target keeps what it can express and reports the rest.
        for target in ("MTL", "CTL"):
            result = transform(pr, target)
            dropped = ", ".join(f"{d.prop} (rule {d.rule})" for d in result.dropped) or "nothing"
            print(f"{target}        : {result.render()}")
            print(f"  {result.completeness.value:<9}  dropped {dropped}")

    show("factual rules")
    fact = parse_dsl('req "mode" { pr { do monitor_mode is INIT } }').primitives[0]
    print("bare     :", transform(fact, "MTL").render())
    print("wrapped  :", transform(fact, "MTL", wrap_factual=True).render())


if __name__ == "__main__":
    main()
