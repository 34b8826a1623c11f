import random
from fractions import Fraction

import pytest

from cosovereign import (Alphabet, EnumerationBound, NCPolynomial, ParseError,
                         Rule, RuleOrderError, apply_rule_at, confluent,
                         find_ambiguities, format_presentation, is_free_family,
                         parse_presentation, reduce, reduced_monomials,
                         resolve, q)


def mono(alphabet, text):
    return alphabet.word(*text.split("."))


def poly(alphabet, terms):
    return NCPolynomial({mono(alphabet, t) if t else (): c
                         for t, c in terms.items()})


@pytest.fixture
def ab():
    return Alphabet(("a", "b"))


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("ok", "not ok"))
    with pytest.raises(ValueError):
        Alphabet(("q",))
    al = Alphabet(("x1", "X1^22"))
    assert al.index("X1^22") == 1


def test_rule_compatibility_enforced(ab):
    Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))
    # b.a -> a.b is fine, a.b -> b.a is not
    Rule(mono(ab, "b.a"), poly(ab, {"a.b": 1}))
    with pytest.raises(RuleOrderError):
        Rule(mono(ab, "a.b"), poly(ab, {"b.a": 1}))
    with pytest.raises(RuleOrderError):
        Rule(mono(ab, "a"), poly(ab, {"a": 1}))
    with pytest.raises(ValueError):
        Rule((), NCPolynomial())


def test_single_rule_no_ambiguities(ab):
    rules = [Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))]
    assert find_ambiguities(rules) == []
    assert confluent(rules).ok


def test_two_rule_overlaps(ab):
    rules = [Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)})),
             Rule(mono(ab, "b.a"), NCPolynomial({(): Fraction(1)}))]
    ambs = find_ambiguities(rules)
    assert len(ambs) == 2
    witnesses = {ab.render(a.witness) for a in ambs}
    assert witnesses == {"a.b.a", "b.a.b"}
    assert all(a.kind == "overlap" for a in ambs)
    assert confluent(rules).ok  # the free group on one generator


def test_inclusion_with_duplicate_lhs(ab):
    r1 = Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))
    r2 = Rule(mono(ab, "a.b"), poly(ab, {"a.a": 1}))
    ambs = find_ambiguities([r1, r2])
    assert [a.kind for a in ambs] == ["inclusion"]
    ok, residual = resolve(ambs[0], [r1, r2])
    assert not ok
    assert residual == poly(ab, {"": 1, "a.a": -1})


def test_inclusion_proper_factor(ab):
    r1 = Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))
    r2 = Rule(mono(ab, "b"), poly(ab, {"a": 1}))
    ambs = find_ambiguities([r1, r2])
    assert [a.kind for a in ambs] == ["inclusion"]
    report = confluent([r1, r2])
    assert not report.ok
    fail = report.failures()[0]
    assert fail.residual == poly(ab, {"": 1, "a.a": -1})


def test_reduce_basics(ab):
    rules = [Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))]
    p = poly(ab, {"a.a.b": 2, "b": 1})
    out = reduce(p, rules)
    assert out == poly(ab, {"a": 2, "b": 1})
    # idempotent
    assert reduce(out, rules) == out
    # already reduced monomial is a fixpoint
    assert reduce(poly(ab, {"b.a": 1}), rules) == poly(ab, {"b.a": 1})


def test_reduce_empty_rule_list(ab):
    p = poly(ab, {"a.b": 1})
    assert reduce(p, []) == p


def test_apply_rule_at(ab):
    rule = Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))
    out = apply_rule_at(mono(ab, "b.a.b.a"), rule, 1)
    assert out == poly(ab, {"b.a": 1})
    with pytest.raises(ValueError):
        apply_rule_at(mono(ab, "b.a.b.a"), rule, 0)


def _slq2_rules():
    from cosovereign import build_slq2
    return build_slq2(q)


def test_strategy_independence_on_confluent_system():
    spec = _slq2_rules()
    rng = random.Random(9)
    letters = range(4)
    for _ in range(100):
        terms = {}
        for _ in range(rng.randrange(1, 4)):
            w = tuple(rng.choice(letters) for _ in range(rng.randrange(6)))
            terms[w] = terms.get(w, 0) + Fraction(rng.randrange(-3, 4))
        p = NCPolynomial(terms)
        left = reduce(p, spec.rules, strategy="leftmost")
        right = reduce(p, spec.rules, strategy="rightmost")
        assert left == right


def test_reduce_linearity():
    spec = _slq2_rules()
    rng = random.Random(29)
    for _ in range(30):
        def rand_poly():
            return NCPolynomial({
                tuple(rng.choice(range(4)) for _ in range(rng.randrange(5))):
                Fraction(rng.randrange(-3, 4)) for _ in range(3)})
        p, r = rand_poly(), rand_poly()
        c = Fraction(rng.randrange(-3, 4))
        lhs = reduce(p + r.scaled(c), spec.rules)
        rhs = reduce(p, spec.rules) + reduce(r, spec.rules).scaled(c)
        assert lhs == rhs


def test_reduced_monomials(ab):
    rules = [Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)}))]
    monos = reduced_monomials(rules, ab, 2)
    assert [ab.render(m) for m in monos] == ["1", "a", "b", "a.a", "b.a", "b.b"]
    assert reduced_monomials([], ab, 0) == [()]


def test_reduced_monomials_guard(ab):
    with pytest.raises(EnumerationBound):
        reduced_monomials([], ab, 25, limit=1000)


def test_is_free_family(ab):
    rules = [Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)})),
             Rule(mono(ab, "b.a"), NCPolynomial({(): Fraction(1)}))]
    assert is_free_family(rules, ab, ["a"], 5)
    assert not is_free_family(rules, ab, ["a", "b"], 2)
    assert is_free_family(rules, ab, [], 4)
    bad = [Rule(mono(ab, "a.b"), NCPolynomial({(): Fraction(1)})),
           Rule(mono(ab, "b"), poly(ab, {"a": 1}))]
    with pytest.raises(ValueError, match="not confluent"):
        is_free_family(bad, ab, ["a"], 2)


def test_presentation_round_trip():
    from cosovereign import build_hq, build_hef, ExactMatrix
    for spec in (build_hq(q), build_hq(Fraction(3, 2)),
                 build_hef(ExactMatrix.diagonal([1, 2]),
                           ExactMatrix([[1, 0], [1, 2]]))):
        text = format_presentation(spec.alphabet, spec.rules)
        alphabet, rules = parse_presentation(text)
        assert alphabet == spec.alphabet
        assert tuple(rules) == spec.rules


def test_parse_presentation_errors():
    with pytest.raises(ParseError, match="generators"):
        parse_presentation("rules:\na -> 1\n")
    with pytest.raises(ParseError, match="->"):
        parse_presentation("generators:\na\nrules:\na = 1\n")
    with pytest.raises(ParseError, match="left side"):
        parse_presentation("generators:\na\nrules:\nc -> 1\n")
    with pytest.raises(ParseError):
        parse_presentation("generators:\na\nrules:\na.a -> 2*z\n")


def test_parse_presentation_terms():
    text = """
generators:
a
b
rules:
b.a -> (q^2)*a.b - 1/2*a + 3
"""
    alphabet, rules = parse_presentation(text)
    rhs = rules[0].rhs
    assert rhs.coefficient(alphabet.word("a", "b")) == q ** 2
    assert rhs.coefficient(alphabet.word("a")) == Fraction(-1, 2)
    assert rhs.coefficient(()) == 3
