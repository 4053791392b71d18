"""Teaching the binder a new verb, then exchanging the result as JSON.

Predicates are mapped to formal semantics through verb frames keyed by lemma
and arity. This script shows a predicate that fails to bind, registers the
missing frame, and writes the bound requirement to the canonical JSON format,
which loads back to an identical object.

    python3 demos/03_frames_and_interchange.py
"""

from rcmforge import UnboundFrameError, dump_canonical, load_canonical, parse_dsl, render_dsl, transform
from rcmforge.frames import VerbFrame, builtin_frames, register_frame
from rcmforge.model import Process

SOURCE = 'req "kill-switch" { pr { if the operator is absent do the supervisor terminates the pump } }'


def main() -> None:
    db = builtin_frames()
    try:
        parse_dsl(SOURCE, db)
    except UnboundFrameError as err:
        print(f"binding failed: {err}")
        print(f"  -> the seed database has terminate/1 but not terminate/{err.arity}")

    db = register_frame(db, VerbFrame("terminate", 2, Process("terminate", ("$1", "$2"))))
    req = parse_dsl(SOURCE, db)
    print("\nafter registering terminate/2:")
    print("  MTL:", transform(req.primitives[0], "MTL").render())

    text = dump_canonical(req)
    print(f"\ncanonical JSON ({len(text)} bytes), first lines:")
    for line in text.splitlines()[:8]:
        print("  " + line)
    assert load_canonical(text) == req
    print("  ... loads back to an identical requirement")

    print("\npretty-printed DSL:")
    print(render_dsl(req, db))


if __name__ == "__main__":
    main()
