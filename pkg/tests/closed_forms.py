"""The closed-form R(F) expressions for the two cell models, used as test oracles.

A leading integer k in ``k (x) r`` is read as k times 1 (x) r.
"""

from torus_nielsen.algebra import ONE, U, Monomial, RingElt, helper_sum
from torus_nielsen.hochschild import Chain1


def _t(left, right) -> Chain1:
    return Chain1.tensor(left, right)


def square_closed_form(c1: int, b4: int) -> Chain1:
    X, Y, Wb = helper_sum("X", c1), helper_sum("Y", c1), helper_sum("W", b4)
    ui = U.inverse()
    return (
        _t(ui, Y)
        - _t(ONE, X) * 2
        + _t(ONE, Y)
        + _t(ONE, X * Wb)
        - _t(ui, Y * Wb)
    )


def triangulated_closed_form(c1: int, c2: int) -> Chain1:
    X, W = helper_sum("X", c1), helper_sum("W", c2)
    ui = U.inverse()

    def m(a, b=0):
        return RingElt.coerce(Monomial(a, b))

    return (
        -_t(ONE, m(-c1 - 1) * W)
        - _t(ONE, m(c1) * W)
        - _t(ONE, m(c1) * X)
        + _t(ui, X)
        + _t(ui, m(-c1) * W)
        + _t(ONE, m(-1) * X + m(-c1 - 1) * W)
        - _t(ONE, m(-1) * X)
        - _t(ONE, m(-2, 1) * X + m(-c1 - 1) * W)
        + _t(ui, m(-1, 1) * X)
        + _t(ONE, m(-2, 1) * X)
        - _t(ONE, m(-2, 1) * X + m(-c1 - 1) * W)
    )
