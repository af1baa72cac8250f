"""Shared discretization parameters for the verifiable mechanisms.

Both sides replace the exact LDP probabilities with slot counts over a
vector of n entries: the true category occupies l slots, every other
category (n-l)/(d-1) slots.  The approximated p = l/n never exceeds the
exact value and the approximated q never undercuts it, so the
discretized mechanism leaks at most epsilon.
"""

import math
from dataclasses import dataclass


class ParameterError(Exception):
    """No valid discretization exists for the requested inputs."""


@dataclass(frozen=True)
class KrrSharedParams:
    l: int
    n: int
    z: int
    epsilon: float
    d: int
    width: int

    @property
    def p_hat(self) -> float:
        return self.l / self.n

    @property
    def q_hat(self) -> float:
        return (self.n - self.l) / ((self.d - 1) * self.n)

    def slot_count(self, category: int, v: int) -> int:
        return self.l if category == v else (self.n - self.l) // (self.d - 1)

    def category_exponents(self):
        """P1 candidate exponents z^0 .. z^(d-1)."""
        return [self.z ** j for j in range(self.d)]

    def sum_candidates(self):
        """P2 candidates: one possible vector sum per choice of the true category."""
        other = (self.n - self.l) // (self.d - 1)
        powers = self.category_exponents()
        total = sum(powers)
        return [other * (total - powers[j]) + self.l * powers[j] for j in range(self.d)]

    def max_encoded_sum(self) -> int:
        return self.n * self.z ** (self.d - 1)


@dataclass(frozen=True)
class OueSharedParams:
    l: int
    n: int
    epsilon: float
    d: int

    @property
    def p_hat(self) -> float:
        return 0.5

    @property
    def q_hat(self) -> float:
        return self.l / self.n


def exact_krr_p(epsilon: float, d: int) -> float:
    e = math.exp(epsilon)
    return e / (d - 1 + e)


def decide_shared_parameters(epsilon: float, width: int, d: int) -> KrrSharedParams:
    """Find the best integer approximation (l, n, z) of kRR's distribution.

    Scans i downward from floor(width * p_exact) until (d-1) divides
    (width - i), then reduces (i, width) by their gcd with the per-category
    count.  z exceeds every slot count so base-z digit sums identify the
    count multiset uniquely.

    Raises ParameterError when the scan exhausts i > 0, which means the
    width is too coarse for this d.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if d < 2:
        raise ValueError("d must be at least 2")
    if width < d:
        raise ValueError("width must be at least d")

    i = int(width * exact_krr_p(epsilon, d))
    l = n = None
    while i > 0:
        if (width - i) % (d - 1) == 0:
            common = math.gcd(i, math.gcd(width, (width - i) // (d - 1)))
            l, n = i // common, width // common
            break
        i -= 1
    if l is None:
        raise ParameterError(f"no feasible slot split for width={width}, d={d}")

    other = (n - l) // (d - 1)
    if other < 1:
        raise ParameterError(f"width={width} leaves no slots for non-true categories")
    z = max(l, other) + 1
    return KrrSharedParams(l=l, n=n, z=z, epsilon=epsilon, d=d, width=width)


def oue_shared_parameters(epsilon: float, width: int, d: int) -> OueSharedParams:
    """OUE discretization: l ones out of n=width slots for a q-type vector."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if width % 2 != 0:
        raise ValueError("width must be even (the p-type vector holds n/2 ones)")
    l = math.ceil(width / (1 + math.exp(epsilon)))
    if l == width // 2:
        raise ParameterError("l equals n/2, p-type and q-type vectors are "
                             "indistinguishable at this epsilon/width")
    return OueSharedParams(l=l, n=width, epsilon=epsilon, d=d)


def approximation_error(params: KrrSharedParams) -> float:
    """Gap between the exact kRR p and the discretized l/n, always >= 0."""
    return exact_krr_p(params.epsilon, params.d) - params.l / params.n


def check_group_capacity(params: KrrSharedParams, q: int) -> None:
    """The base-z sum encoding must not wrap mod q."""
    if params.max_encoded_sum() >= q:
        raise ParameterError(
            f"n*z^(d-1) = {params.max_encoded_sum()} exceeds the group order; "
            "use a larger group or smaller d/width")
