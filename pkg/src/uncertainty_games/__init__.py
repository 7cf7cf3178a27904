"""Majorization, conditional majorization and channel majorization, decided
exactly through the gambling games that define them."""

__version__ = "0.1.0"

from .channel import (
    ChanGameSpec, ChannelMatrix, ChanWitness, DistinguishingChanGame, chan_majorizes,
    chan_payoff, chan_strategy, f_monotone, monotone_as_game, single_column_games,
    vector_game_payoff,
)
from .conditional import (
    CondGameSpec, CondWitness, Decision, DistinguishingCondGame, JointDistribution,
    cond_majorizes, cond_payoff, cond_strategy,
)
from .decomp import BirkhoffDecomposition, DoublyStochastic, birkhoff, hlp_transfer
from .entropy import channel_entropy, check_entropy_axioms, continuity_bound_check, shannon
from .lp import LpFeasibilityProblem, LpOutcome, LpStatus, Sense, solve_feasibility
from .majorization import game_payoff, ky_fan, majorizes, tensor_game_payoff
from .numerics import (
    GameMatrix, Mat, ProbVector, Rat, SubDistribution, sort_desc, u_apply, u_inverse, u_matrix,
)
from .sim import SimConfig, SimResult, simulate_chan_game, simulate_cond_game, simulate_dice_game
