import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.domain.algebras import (
    build_system,
    quantum_weyl,
    weyl_classical,
    weyl_relations,
)
from src.core.domain.errors import DegreeOverflowError, RuleExplosionError
from src.core.domain.ncpoly import DEGLEX, GenId, GenKind, NCPoly
from src.core.domain.rewriting import (
    RewriteRule,
    RewriteSystem,
    complete,
    confluence_audit,
    normal_form,
    overlaps,
)
from src.core.domain.rmatrix import dj_rmatrix
from src.core.domain.scalars import ScalarField
from tests.conftest import letter

F = ScalarField.symbolic()

WEYL2 = weyl_classical(2, F)
WEYL2_SYSTEM = build_system(WEYL2, 4)
# two-letter words on both sides of a quadratic relation reach degree 6
WEYL2_SYSTEM_6 = build_system(WEYL2, 6)
WEYL2_LETTERS = [NCPoly.letter(F, gen) for gen in WEYL2.generators()]


def is_irreducible(p: NCPoly, system: RewriteSystem) -> bool:
    heads = system.heads()
    for word, _ in p:
        for head in heads:
            for i in range(len(word) - len(head) + 1):
                if word[i : i + len(head)] == head:
                    return False
    return True


letters = st.integers(0, len(WEYL2_LETTERS) - 1)
words = st.lists(letters, max_size=2)
coefficients = st.integers(-4, 4).filter(bool)


def monomial(indices) -> NCPoly:
    p = NCPoly.constant(F, 1)
    for i in indices:
        p = p * WEYL2_LETTERS[i]
    return p


class TestNormalForm:
    """Test cases for reduction against completed systems"""

    def test_weyl_single_pair(self):
        system = build_system(weyl_classical(1, F), 3)
        x, d = letter(F, GenKind.X), letter(F, GenKind.D_CL)
        assert normal_form(d * x * x, system) == x * x * d + 2 * x

    def test_hecke_cube(self):
        g = letter(F, GenKind.LHAT)
        system = complete([g * g - g.scale(F.omega) - 1], degree_bound=3)
        expected = g.scale(F.omega * F.omega + 1) + F.omega
        assert normal_form(g * g * g, system) == expected

    def test_quantum_weyl_single_pair(self):
        system = build_system(quantum_weyl(dj_rmatrix(F, 1)), 3)
        m, d = letter(F, GenKind.M), letter(F, GenKind.D_Q)
        expected = (m * m * d).scale(F.power(-4)) + m.scale(F.power(-3) + F.power(-1))
        assert normal_form(d * m * m, system) == expected

    def test_degree_overflow(self):
        x = letter(F, GenKind.X)
        system = build_system(weyl_classical(1, F), 2)
        with pytest.raises(DegreeOverflowError) as error:
            normal_form(x * x * x, system)
        assert error.value.bound == 2

    def test_scalars_are_normal(self):
        q = NCPoly.constant(F, F.q)
        assert normal_form(q, WEYL2_SYSTEM) == q


class TestCompletion:
    """Test cases for truncated completion"""

    def test_weyl_relations_count(self):
        assert len(weyl_relations(2, F)) == 28

    def test_weyl_system_is_presented_by_its_relations(self):
        assert WEYL2_SYSTEM.stats()["rules"] == 28
        assert WEYL2_SYSTEM.stats()["max_head_degree"] == 2

    def test_completion_resolves_a_critical_pair(self):
        a, b = letter(F, GenKind.X, 1, 1), letter(F, GenKind.X, 1, 2)
        # aa -> b and ab -> a disagree on aab
        system = complete([a * a - b, a * b - a], degree_bound=3)
        assert confluence_audit(system) == []

    def test_rule_explosion_is_reported(self):
        with pytest.raises(RuleExplosionError) as error:
            complete(weyl_relations(2, F), degree_bound=4, max_rules=3)
        assert error.value.cap == 3

    def test_relations_above_bound_rejected(self):
        x = letter(F, GenKind.X)
        with pytest.raises(DegreeOverflowError):
            complete([x * x * x], degree_bound=2)

    def test_overlaps(self):
        found = list(overlaps((1, 2), (2, 3), 3))
        assert [o.word for o in found] == [(1, 2, 3)]
        assert list(overlaps((1, 2), (2, 3), 2)) == []


class TestConfluenceAudit:
    def test_completed_systems_pass(self):
        assert confluence_audit(WEYL2_SYSTEM) == []

    def test_unresolved_overlap_is_reported(self):
        a = GenId(GenKind.X, 1, 1).code
        b = GenId(GenKind.X, 1, 2).code
        rules = [RewriteRule((a, a), {(b,): F.one}), RewriteRule((a, b), {(a,): F.one})]
        system = RewriteSystem(F, rules, DEGLEX, 3, confluent=False)
        failures = confluence_audit(system)
        assert (a, a, b) in [f.overlap.word for f in failures]
        assert all(f.residual for f in failures)


class TestIdealStability:
    """Randomised membership checks in the Weyl algebra with N = 2"""

    @settings(max_examples=1000, deadline=None)
    @given(st.integers(0, len(WEYL2.relations) - 1), words, words, coefficients)
    def test_multiples_of_relations_vanish(self, index, left, right, c):
        relation = WEYL2.relations[index]
        p = monomial(left) * relation * monomial(right) * c
        assert normal_form(p, WEYL2_SYSTEM_6).is_zero()

    def test_degree_six_system_matches_the_degree_four_rules(self):
        assert WEYL2_SYSTEM_6.stats()["rules"] == WEYL2_SYSTEM.stats()["rules"]
        assert confluence_audit(WEYL2_SYSTEM_6) == []

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.tuples(st.lists(letters, max_size=4), coefficients), max_size=4))
    def test_normal_form_is_idempotent_and_irreducible(self, terms):
        p = NCPoly.zero(F)
        for indices, c in terms:
            p = p + monomial(indices) * c
        nf = normal_form(p, WEYL2_SYSTEM)
        assert normal_form(nf, WEYL2_SYSTEM) == nf
        assert is_irreducible(nf, WEYL2_SYSTEM)

    @settings(max_examples=300, deadline=None)
    @given(st.lists(letters, max_size=4), st.lists(letters, max_size=4))
    def test_normal_form_is_linear(self, first, second):
        a, b = monomial(first), monomial(second)
        separately = normal_form(a, WEYL2_SYSTEM) + normal_form(b, WEYL2_SYSTEM)
        assert normal_form(a + b, WEYL2_SYSTEM) == separately
