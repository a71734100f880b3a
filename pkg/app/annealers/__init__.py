"""Annealers module."""

from app.annealers.acceptance import accept_prob_boltzmann, accept_prob_quantum
from app.annealers.kernel import TraceWriter, anneal_run, mark_success
from app.annealers.moves import (
    draw_multi,
    draw_single,
    hamming_distance,
    propose_multi,
    propose_single,
    random_spins,
)
from app.annealers.types import AnnealParams, Method, RunOutcome, Schedule, TraceStep

__all__ = [
    "AnnealParams",
    "Method",
    "RunOutcome",
    "Schedule",
    "TraceStep",
    "TraceWriter",
    "accept_prob_boltzmann",
    "accept_prob_quantum",
    "anneal_run",
    "draw_multi",
    "draw_single",
    "hamming_distance",
    "mark_success",
    "propose_multi",
    "propose_single",
    "random_spins",
]
