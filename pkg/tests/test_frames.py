import pytest

from oracles import substitute
from rcmforge.errors import DuplicateFrameError, FrameFileError, UnboundFrameError
from rcmforge.frames import (
    VerbFrame,
    bind_predicate,
    bind_time,
    builtin_frames,
    default_frames,
    dumps_frames,
    format_template,
    lemma_candidates,
    loads_frames,
    parse_template,
    register_frame,
)
from rcmforge.model import (
    AggregatedRelational,
    Operand,
    Predicate,
    Process,
    Relation,
    RELATION_OPS,
    Relational,
    TimeSpec,
)
from rcmforge.tl import render_formal


def pred(op, *operands, negated=False):
    return Predicate(tuple(Operand(o) for o in operands), op, negated)


def test_exceeds_binds_to_greater_than(db):
    assert bind_predicate(pred("exceeds", "X", "1"), db).formal == Relational("X", ">", "1")


def test_send_reorders_arguments(db):
    p = bind_predicate(pred("sends", "the monitor", "REQ_Sig", "the station"), db)
    assert p.formal == Process("send", ("the_monitor", "the_station", "REQ_Sig"))


def test_set_to(db):
    assert bind_predicate(pred("set", "X", "True"), db).formal == Relational("X", "=", "True")


def test_aggregated_rhs(db):
    p = bind_predicate(pred("below", "fuel level", "min(Thr1, Thr2)"), db)
    assert p.formal == AggregatedRelational("fuel_level", "<", "min", ("Thr1", "Thr2"))


def test_changing_state_binds_as_equality(db):
    p = bind_predicate(pred("shall be", "the window", "moving-UP"), db)
    assert render_formal(p.formal) == "the_window = moving-UP"


def test_binding_keeps_operands_and_negation(db):
    p = pred("exceeds", "X", "Y", negated=True)
    bound = bind_predicate(p, db)
    assert bound.operands == p.operands and bound.negated and bound.operator == p.operator


def test_unbound_frame_carries_signature(db):
    with pytest.raises(UnboundFrameError) as exc:
        bind_predicate(pred("frobnicates", "X", "Y"), db)
    # the surface form is reported: registering it always makes the predicate bind
    assert (exc.value.lemma, exc.value.arity) == ("frobnicates", 2)
    assert "unbound frame" in str(exc.value)


def test_wrong_arity_is_unbound(db):
    with pytest.raises(UnboundFrameError):
        bind_predicate(pred("exceeds", "X"), db)


def test_hidden_constraints_bound_recursively(db):
    inner = pred("is", "pressure", "3")
    p = Predicate((Operand("pump", inner), Operand("ON")), "is")
    bound = bind_predicate(p, db)
    assert bound.operands[0].hidden_constraint.formal == Relational("pressure", "=", "3")
    assert bound.is_bound


@pytest.mark.parametrize("relation,op", [
    (Relation.AT_LEAST, ">="),
    (Relation.EXACTLY, "="),
    (Relation.LESS_THAN, "<"),
])
def test_bind_time_examples(relation, op):
    assert bind_time(TimeSpec(2, "s", relation)).formal_op == op


def test_bind_time_is_a_bijection():
    ops = {bind_time(TimeSpec(0, "s", r)).formal_op for r in Relation}
    assert len(ops) == len(Relation) == 5
    assert ops == {"=", "<=", ">=", "<", ">"}
    assert RELATION_OPS == {r: bind_time(TimeSpec(0, "s", r)).formal_op for r in Relation}


def test_register_duplicate_without_replace(db):
    frame = VerbFrame("exceed", 2, Relational("$1", ">", "$2"))
    with pytest.raises(DuplicateFrameError, match="duplicate frame"):
        register_frame(db, frame)


def test_register_replace_and_original_untouched(db):
    frame = VerbFrame("exceed", 2, Relational("$1", ">=", "$2"))
    db2 = register_frame(db, frame, replace=True)
    assert db2.get("exceed", 2) == frame
    assert db.get("exceed", 2).template.op == ">"


def test_register_then_bind(db):
    frame = VerbFrame("overtake", 2, Process("overtakes", ("$2", "$1")))
    db2 = register_frame(db, frame)
    p = bind_predicate(pred("overtakes", "car A", "car B"), db2)
    assert p.formal == Process("overtakes", ("car_B", "car_A"))


def test_turn_to_against_substitution_oracle(db):
    db2 = register_frame(db, VerbFrame("turn_to", 2, Relational("$1", "=", "$2")), replace=True)
    p = bind_predicate(pred("turns to", "Z", "1"), db2)
    assert render_formal(p.formal) == substitute("$1 = $2", ["Z", "1"]) == "Z = 1"


def test_seed_database_covers_required_frames(db):
    for lemma, arity in [("be", 2), ("set", 2), ("exceed", 2), ("equal", 2), ("turn_to", 2),
                         ("transition_to", 2), ("send", 3), ("terminate", 1), ("indicate", 2),
                         ("reduce_to", 2)]:
        assert db.get(lemma, arity) is not None, lemma


def test_every_seed_frame_instantiates_like_the_oracle(db):
    for frame in db:
        operands = [f"arg {i}" for i in range(1, frame.arity + 1)]
        p = Predicate(tuple(Operand(o) for o in operands), frame.lemma)
        got = render_formal(bind_predicate(p, db).formal)
        assert got == substitute(format_template(frame.template)[1], operands)


def test_file_round_trip(db):
    assert loads_frames(dumps_frames(db)) == db


def test_file_errors_carry_line():
    with pytest.raises(FrameFileError) as exc:
        loads_frames("# c\nexceed\t2\trelational\t$1 > $2\nexceed\t2\trelational\t$1 > $2\n", "f.tsv")
    assert exc.value.line == 3
    with pytest.raises(FrameFileError, match="f.tsv:1"):
        loads_frames("exceed 2 relational", "f.tsv")
    with pytest.raises(FrameFileError):
        loads_frames("exceed\t1\trelational\t$1 > $2\n")


def test_bad_templates():
    with pytest.raises(ValueError):
        parse_template("relational", "$1 ~ $2")
    with pytest.raises(ValueError):
        parse_template("nope", "x")


def test_env_var_override(tmp_path, monkeypatch):
    path = tmp_path / "frames.tsv"
    path.write_text("glow\t1\tprocess\tglow($1)\n")
    monkeypatch.setenv("RCMFORGE_FRAMES", str(path))
    assert len(default_frames()) == 1
    monkeypatch.delenv("RCMFORGE_FRAMES")
    assert default_frames() == builtin_frames()


def test_lemma_candidates():
    assert "exceed" in lemma_candidates("exceeds")
    assert "terminate" in lemma_candidates("terminated")
    assert "rain" in lemma_candidates("raining")
    assert "less_than" in lemma_candidates("less-than")
