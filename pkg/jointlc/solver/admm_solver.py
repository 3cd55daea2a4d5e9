import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import torch
from tqdm import tqdm

from jointlc.models.lc_norm import LCParams, tensor_prox
from jointlc.ops.t_algebra import joint_rank
from jointlc.ops.tensor_core import fold_pair, missing_rate, mode_pairs, project, unfold_pair
from jointlc.utils.logging_utils import init_logger

from .solver_utils import GeometricMuController

logger = init_logger(__name__)

Pair = Tuple[int, int]


def num_pairs(order: int) -> int:
    return order * (order + 1) // 2


@dataclass
class SolverConfig:
    """Scalars of the ADMM scheme.

    Args:
        alpha (Sequence[float], optional): unnormalized pair weights in lexicographic pair order;
            ``None`` weighs every pair equally.
        tau (float): ``mu0_{l1l2} = beta_{l1l2} / tau``.
        eta (float): geometric growth of the penalties, ``> 1``.
        lc (LCParams): parameters of the logarithmic composite norm.
        epsilon (float): stop once the relative change drops to or below this.
        max_iters (int): iteration cap ``K``.
        rank_tol (float, optional): tolerance of the final joint-rank report; ``None`` uses the
            numerical-rank default.
    """

    alpha: Optional[Sequence[float]] = None
    tau: float = 10000.0
    eta: float = 1.1
    lc: LCParams = field(default_factory=LCParams)
    epsilon: float = 1e-4
    max_iters: int = 500
    rank_tol: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.lc, dict):
            self.lc = LCParams(**self.lc)
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not self.eta > 1:
            raise ValueError(f"eta must be > 1, got {self.eta}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.max_iters) < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        self.max_iters = int(self.max_iters)
        if self.rank_tol is not None and self.rank_tol < 0:
            raise ValueError(f"rank_tol must be nonnegative, got {self.rank_tol}")
        if self.alpha is not None:
            self.alpha = [float(a) for a in self.alpha]
            if any(not a > 0 for a in self.alpha):
                raise ValueError(f"every alpha entry must be positive, got {self.alpha}")

    def resolve_alpha(self, order: int) -> List[float]:
        if self.alpha is None:
            return [1.0] * num_pairs(order)
        if len(self.alpha) != num_pairs(order):
            raise ValueError(
                f"alpha has {len(self.alpha)} entries, an order-{order} tensor needs {num_pairs(order)}"
            )
        return list(self.alpha)


@dataclass
class SolverState:
    """ADMM iterate. ``z`` and ``q`` are kept folded back to the full tensor shape."""

    x: torch.Tensor
    z: Dict[Pair, torch.Tensor]
    q: Dict[Pair, torch.Tensor]
    mu: Dict[Pair, float]
    beta: Dict[Pair, float]
    iter: int = 0
    re_history: List[float] = field(default_factory=list)


@dataclass
class CompletionResult:
    x: torch.Tensor
    iterations: int
    converged: bool
    re_history: List[float]
    joint_rank_final: List[int]

    @property
    def final_re(self) -> float:
        return self.re_history[-1] if self.re_history else float("inf")


def derive_betas(alpha: Sequence[float], order: Optional[int] = None) -> Dict[Pair, float]:
    """Normalize ``alpha`` to pair weights summing to one."""
    alpha = [float(a) for a in alpha]
    if order is None:
        order = int(round((math.sqrt(8 * len(alpha) + 1) - 1) / 2))
    if order < 1 or len(alpha) != num_pairs(order):
        raise ValueError(f"alpha of length {len(alpha)} does not match any tensor order")
    if any(not a > 0 for a in alpha):
        raise ValueError(f"every alpha entry must be positive, got {alpha}")
    total = math.fsum(alpha)
    return {pair: a / total for pair, a in zip(mode_pairs(order), alpha)}


def relative_change(x_new: torch.Tensor, x_old: torch.Tensor) -> float:
    """``||x_new - x_old||_F**2 / ||x_old||_F**2``; ``inf`` when ``x_old`` is zero."""
    if x_new.shape != x_old.shape:
        raise ValueError(f"shape mismatch: {tuple(x_new.shape)} vs {tuple(x_old.shape)}")
    denom = torch.sum(x_old * x_old).item()
    if denom == 0:
        return float("inf")
    diff = x_new - x_old
    return torch.sum(diff * diff).item() / denom


class JointLCSolver:
    """
    ADMM solver for low-rank completion under the joint logarithmic composite norm.

    Every mode pair ``(l1, l2)`` owns an auxiliary tensor ``Z`` and a multiplier ``Q``. One
    iteration shrinks ``X + Q / mu`` in every mode-l1l2 unfolding, averages the results back into
    ``X`` on the unobserved entries, ascends the multipliers and grows every ``mu`` by ``eta``.

    Args:
        config (SolverConfig): solver parameters.
        disable_progress (bool, defaults to False): hide the tqdm progress bar.
    """

    def __init__(self, config: SolverConfig, disable_progress: bool = False) -> None:
        self.config = config
        self.disable_progress = disable_progress
        self.mu_controller = GeometricMuController(config.eta)

    def init_state(self, t: torch.Tensor, omega: torch.Tensor) -> SolverState:
        if t.shape != omega.shape:
            raise ValueError(f"mask shape {tuple(omega.shape)} does not match tensor shape {tuple(t.shape)}")
        t = t.to(torch.float64)
        order = t.dim()
        beta = derive_betas(self.config.resolve_alpha(order), order)
        x = project(t, omega)
        pairs = mode_pairs(order)
        return SolverState(
            x=x,
            z={pair: x.clone() for pair in pairs},
            q={pair: torch.zeros_like(x) for pair in pairs},
            mu={pair: beta[pair] / self.config.tau for pair in pairs},
            beta=beta,
        )

    def update_z(self, state: SolverState) -> SolverState:
        # rho = mu / beta: the Z-subproblem divided through by beta
        dims = tuple(state.x.shape)
        z = {}
        for (l1, l2), mu in state.mu.items():
            w = unfold_pair(state.x + state.q[(l1, l2)] / mu, l1, l2)
            matrix = w.dim() == 2
            if matrix:
                w = w.unsqueeze(-1)
            shrunk = tensor_prox(w, mu / state.beta[(l1, l2)], self.config.lc)
            if matrix:
                shrunk = shrunk.squeeze(-1)
            z[(l1, l2)] = fold_pair(shrunk, dims, l1, l2)
        return replace(state, z=z)

    def update_x(self, state: SolverState, t: torch.Tensor, omega: torch.Tensor) -> SolverState:
        total = torch.zeros_like(state.x)
        mu_sum = 0.0
        for pair, mu in state.mu.items():
            total = total + mu * (state.z[pair] - state.q[pair] / mu)
            mu_sum += mu
        x = torch.where(omega, t.to(torch.float64), total / mu_sum)
        return replace(state, x=x)

    def update_q(self, state: SolverState) -> SolverState:
        q = {pair: state.q[pair] + mu * (state.x - state.z[pair]) for pair, mu in state.mu.items()}
        return replace(state, q=q)

    def run(
        self,
        t: torch.Tensor,
        omega: torch.Tensor,
        on_iteration: Optional[Callable[[SolverState], None]] = None,
    ) -> CompletionResult:
        cfg = self.config
        state = self.init_state(t, omega)
        logger.info(
            f"Completing tensor of shape {tuple(t.shape)} at MR {missing_rate(omega):.2f}% "
            f"over {len(state.mu)} mode pairs, mu0={min(state.mu.values()):.3e}..{max(state.mu.values()):.3e}"
        )

        converged = False
        step_bar = tqdm(range(cfg.max_iters), desc="ADMM iteration", disable=self.disable_progress)
        for _ in step_bar:
            x_old = state.x
            state = self.update_z(state)
            state = self.update_x(state, t, omega)
            state = self.update_q(state)
            re = relative_change(state.x, x_old)
            state = replace(
                state,
                mu=self.mu_controller.update(state.mu),
                iter=state.iter + 1,
                re_history=state.re_history + [re],
            )
            step_bar.set_postfix({"re": re})
            if on_iteration is not None:
                on_iteration(state)
            if re <= cfg.epsilon:
                converged = True
                break

        ranks = joint_rank(state.x, cfg.rank_tol) if state.x.dim() >= 2 else []
        logger.info(
            f"Finished after {state.iter} iterations, converged={converged}, "
            f"final RE={state.re_history[-1]:.3e}, joint rank={ranks}"
        )
        return CompletionResult(
            x=state.x,
            iterations=state.iter,
            converged=converged,
            re_history=list(state.re_history),
            joint_rank_final=ranks,
        )
