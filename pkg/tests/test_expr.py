import pytest

from seqeffect.algebra import format_element, one, orthosupplement, power, zero, parse_element
from seqeffect.expr import ExprError, evaluate, parse, tokenize
from seqeffect.poly import AlgebraConfig

N2, N3 = AlgebraConfig(2), AlgebraConfig(3)


def ev(text, cfg=N3):
    r = evaluate(text, cfg)
    return None if r is None else format_element(r)


class TestEvaluate:
    def test_sequential_product(self):
        assert ev("f([1,0];[0,0];0) (.) f([0,1];[0,0];0)") == "f([0,0];[0,0];1)"

    def test_undefined_sum(self):
        assert ev("f([0];[0];1) (+) g([0];[0];0)", N2) is None

    def test_undefined_propagates(self):
        assert ev("(f([0];[0];1) (+) g([0];[0];0))'", N2) is None
        assert ev("(f([0];[0];1) (+) g([0];[0];0)) (.) 1", N2) is None

    def test_constants_and_prime(self):
        assert evaluate("0'", N2) == one(N2)
        assert evaluate("1 (.) 0", N2) == zero(N2)

    def test_power_and_prime_postfix(self):
        a = parse_element("f([1,0];[0,0];0)", N3)
        assert evaluate("f([1,0];[0,0];0)^2'", N3) == orthosupplement(power(a, 2))

    def test_left_associative_chain(self):
        assert ev("f([1,0];[0,0];0) (+) f([1,0];[0,0];0) (+) f([0,1];[0,0];2)") == "f([2,1];[0,0];2)"

    def test_element_with_polynomial_syntax(self):
        assert ev("f(x;0;0) (.) f(x^2;0;0)") == "f([0,0];[0,0];1)"


class TestErrors:
    @pytest.mark.parametrize(
        "text",
        [
            "f([1];[0];0) (+) f([1];[0];0) (.) f([1];[0];0)",
            "(f([1];[0];0)",
            "f([1];[0];0) (+)",
            "f([1];[0];0)^0",
            "",
            "2",
            "f([1];[0];0) $",
        ],
    )
    def test_rejected(self, text):
        with pytest.raises(ExprError):
            evaluate(text, N2)

    def test_mixing_with_parentheses_is_fine(self):
        assert evaluate("(f([1];[0];0) (+) f([1];[0];0)) (.) f([1];[0];0)", N2) is not None

    def test_tokens(self):
        kinds = [t.kind for t in tokenize("(f([1];[0];0))' (.) 1^3")]
        assert kinds[0] == "lparen" and "prime" in kinds and "caret" in kinds

    def test_parse_tree_is_reusable(self):
        assert parse("0 (+) 1", N2) == parse("0 (+) 1", N2)
