"""
Parameters of the private histogram sketch and their consistency checks.
"""
import math
from dataclasses import dataclass
from typing import Optional

# ceilings on the randomized-response probability and the collision rate n/s
MAX_FLIP_PROBABILITY = 1 / 20
MAX_COLLISION_RATE = 1 / 20


def per_bit_epsilon(q: float) -> float:
    """Privacy loss ln((1-q)/q) of randomized response on one bit."""
    if not 0 < q < 0.5:
        raise ValueError(f"randomized response needs 0 < q < 1/2, got {q}")
    return math.log((1 - q) / q)


@dataclass(frozen=True)
class HistParams:
    """
    Attributes:
        u: Universe size; elements are 0..u-1
        n: Bound on the dataset size (total occurrences)
        eps: Privacy parameter
        ell: Cap on scaled small counts
        dprime: Gray block length, one table column per codeword bit
        s: Table rows (hash width)
        q: Randomized-response flip probability
        gamma: Count scaling factor in (0, 1]
        debug: Allow q = 0 (no privacy) for utility checks
    """

    u: int
    n: int
    eps: float
    ell: int
    dprime: int
    s: int
    q: float
    gamma: float
    debug: bool = False

    def __post_init__(self):
        if self.u < 2:
            raise ValueError(f"universe size u must be at least 2, got {self.u}")
        if self.n < 1:
            raise ValueError(f"dataset bound n must be positive, got {self.n}")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.ell < 1:
            raise ValueError(f"ell must be positive, got {self.ell}")
        if self.dprime < 1:
            raise ValueError(f"dprime must be positive, got {self.dprime}")
        if not 0 < self.gamma <= 1:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")
        if self.q > MAX_FLIP_PROBABILITY:
            raise ValueError(f"violated q <= 1/20: q = {self.q}")
        if self.s < 1 or self.n / self.s > MAX_COLLISION_RATE:
            raise ValueError(f"violated n/s <= 1/20: n = {self.n}, s = {self.s}")
        if self.q == 0:
            if not self.debug:
                raise ValueError("q = 0 releases the table without noise; set debug to allow it")
        elif self.q < 0:
            raise ValueError(f"q must be non-negative, got {self.q}")
        elif self.gamma * per_bit_epsilon(self.q) > self.eps * (1 + 1e-12):
            raise ValueError(
                f"violated gamma * ln((1-q)/q) <= eps: "
                f"{self.gamma} * {per_bit_epsilon(self.q):.6g} > {self.eps}"
            )

    @classmethod
    def create(cls, u: int, n: int, eps: float, dprime: int, q: float = MAX_FLIP_PROBABILITY,
               width_factor: int = 20, ell: Optional[int] = None,
               gamma: Optional[float] = None, debug: bool = False) -> 'HistParams':
        """
        Derive the remaining parameters: ell = ceil(log2 u), s = width_factor * n
        and gamma = min(1, eps / ln((1-q)/q)).

        Raises:
            ValueError: If the resulting parameters are inconsistent
        """
        if ell is None:
            ell = max(1, math.ceil(math.log2(u)))
        if gamma is None:
            gamma = 1.0 if q == 0 else min(1.0, eps / per_bit_epsilon(q))
        return cls(u=u, n=n, eps=eps, ell=ell, dprime=dprime, s=width_factor * n,
                   q=q, gamma=gamma, debug=debug)

    @property
    def threshold(self) -> float:
        """Counts at or above T = ell/gamma take the heavy path."""
        return self.ell / self.gamma

    @property
    def laplace_scale(self) -> float:
        return 1 / self.eps

    @property
    def epsilon_spent(self) -> float:
        """gamma * ln((1-q)/q), the loss of the sketch part; infinite when q = 0."""
        if self.q == 0:
            return math.inf
        return self.gamma * per_bit_epsilon(self.q)

    @property
    def corruption_bound(self) -> float:
        """Per-bit corruption at query time is at most q + n/s."""
        return self.q + self.n / self.s
