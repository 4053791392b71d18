from fractions import Fraction

import pytest

from rcmforge.errors import NotExpressibleError
from rcmforge.model import AggregatedRelational, Process, Relational
from rcmforge.tl import (
    A,
    And,
    Atom,
    E,
    Exists,
    F,
    G,
    Implies,
    Not,
    Or,
    TimeBound,
    Until,
    WeakUntil,
    ctl_valid,
    format_number,
    mtl_valid,
    prop,
    render,
    render_ctl,
    render_formal,
    render_mtl,
)
from rcmforge.transform import transform

P, Q, S = prop("P"), prop("Q"), prop("S")


def test_implication_into_until_of_conjunction():
    f = Implies(S, Until(Q, And(S, prop("v"))))
    assert render_mtl(f) == "S -> (Q U (S & v))"


def test_bounded_globally():
    assert render_mtl(G(P, TimeBound("=", 1, "s"))) == "G[t=1](P)"


def test_bound_values_render_exactly():
    assert render_mtl(F(P, TimeBound("<", Fraction(3, 2)))) == "F[t<1.5](P)"
    assert render_mtl(F(P, TimeBound("<", Fraction(1, 3)))) == "F[t<1/3](P)"


@pytest.mark.parametrize("value,text", [(0, "0"), (Fraction(1, 4), "0.25"), (Fraction(-1, 8), "-0.125"),
                                        (Fraction(2, 3), "2/3"), (12, "12")])
def test_format_number(value, text):
    assert format_number(value) == text


def test_exists_is_not_mtl():
    f = A(G(Exists(Relational("x", "<", "5"), P)))
    assert not mtl_valid(f)
    with pytest.raises(NotExpressibleError, match="MTL"):
        render_mtl(Exists(Relational("x", "<", "5"), P))


def test_bound_is_not_ctl():
    with pytest.raises(NotExpressibleError, match="t<=3"):
        render_ctl(A(G(P, TimeBound("<=", 3))))


def test_unquantified_path_operator_is_not_ctl():
    assert not ctl_valid(G(P))
    assert not ctl_valid(Until(P, S))
    assert ctl_valid(A(Until(P, S)))
    assert not ctl_valid(A(And(P, S)))


def test_weak_until_is_not_mtl():
    assert not mtl_valid(WeakUntil(P, S))


def test_ctl_sides_parenthesised():
    assert render_ctl(A(G(Implies(S, P)))) == "AG((S) -> (P))"
    assert render_ctl(A(G(Implies(And(S, Q), P)))) == "AG((S & Q) -> (P))"


def test_relational_atoms_parenthesised_as_operands():
    x = Atom(Relational("x", "=", "1"))
    assert render_mtl(Implies(x, P)) == "(x = 1) -> P"
    assert render_mtl(G(x)) == "G(x = 1)"
    assert render_mtl(Atom(Relational("x", "=", "1"), negated=True)) == "!(x = 1)"
    assert render_mtl(Atom(Process("p"), negated=True)) == "!p"


def test_exists_glyph_and_ascii_fallback():
    f = A(G(Exists(Relational("d", "<", "5"), P)))
    assert render_ctl(f) == "AG((∃ d < 5) -> (P))"
    assert render_ctl(f, ascii_only=True) == "AG((exists d < 5) -> (P))"
    assert render_ctl(f, ascii_only=True).isascii()


def test_existential_quantifier_forms():
    assert render_ctl(E(F(P))) == "EF(P)"
    assert render_ctl(E(Until(P, S))) == "E[P U S]"


def test_render_formal():
    assert render_formal(Process("send", ("a", "b"))) == "send(a, b)"
    assert render_formal(AggregatedRelational("f", "<", "min", ("a", "b"))) == "f < min(a, b)"


def test_render_dispatch():
    assert render(P, "mtl") == render(P, "CTL") == "P"
    with pytest.raises(ValueError):
        render(P, "LTL")


def test_validity_agrees_with_renderers(corpus):
    for r in corpus.values():
        for pr in r.primitives:
            for target in ("MTL", "CTL"):
                f = transform(pr, target).formula
                other = "CTL" if target == "MTL" else "MTL"
                assert (mtl_valid if target == "MTL" else ctl_valid)(f)
                valid_other = (ctl_valid if other == "CTL" else mtl_valid)(f)
                try:
                    render(f, other)
                    rendered = True
                except NotExpressibleError:
                    rendered = False
                assert rendered == valid_other


def test_rendering_is_injective_on_fixtures(corpus):
    for target in ("MTL", "CTL"):
        seen = {}
        for r in corpus.values():
            for pr in r.primitives:
                f = transform(pr, target).formula
                text = render(f, target)
                assert seen.setdefault(text, f) == f, text


def test_precedence_never_ambiguous():
    a, b, c = prop("a"), prop("b"), prop("c")
    assert render_mtl(And(Or(a, b), c)) == "((a | b) & c)"
    assert render_mtl(Or(a, And(b, c))) == "(a | (b & c))"
    assert render_mtl(Not(And(a, b))) == "!(a & b)"
    assert render_mtl(Implies(Implies(a, b), c)) == "(a -> b) -> c"
