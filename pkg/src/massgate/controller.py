"""Hysteresis relay on the observed total mass.

The flux starts at +1.  The first observation at or above the upper
threshold flips it to -1; the next at or below the lower threshold flips
it back, and so on.  A flip takes effect on the step after the crossing:
``observe`` returns the flux sign to use for the NEXT step, while the
step that produced the crossing already ran with the old sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .analytic import ControlConfig
from .stepper import FluxSign

# Absolute slack on the threshold comparisons.  Time grids sized so the
# discrete mass lands exactly on a threshold land within a few ulp of it
# in floats; without the slack those hits would be missed half the time.
THRESHOLD_ATOL = 1e-12


class CrossingDirection(Enum):
    REACHED_UPPER = "reached_upper"
    REACHED_LOWER = "reached_lower"


@dataclass(frozen=True)
class SwitchEvent:
    """One detected threshold crossing."""

    index: int
    time: float
    mass_at_switch: float
    direction: CrossingDirection


@dataclass(frozen=True)
class ControllerState:
    """Relay phase plus the ordered record of crossings so far.

    The phase is +1 before the first event and after even-indexed events,
    -1 after odd-indexed events; directions alternate starting with an
    upper crossing.
    """

    phase: FluxSign = FluxSign.INFLOW
    events: tuple[SwitchEvent, ...] = ()
    next_index: int = 1


def observe(
    ctrl: ControllerState,
    mass_value: float,
    time: float,
    control: ControlConfig,
    atol: float = THRESHOLD_ATOL,
) -> tuple[ControllerState, FluxSign]:
    """Feed one mass observation to the relay.

    Returns the updated state and the flux sign for the next step.  At
    most one event is emitted per observation; the comparisons are
    inclusive (>= upper, <= lower) up to ``atol``.
    """
    if ctrl.events:
        if time <= ctrl.events[-1].time:
            raise ValueError(
                f"observation time {time} not after last event at {ctrl.events[-1].time}"
            )
    elif time < 0.0:
        raise ValueError(f"observation time must be nonnegative, got {time}")

    if ctrl.phase is FluxSign.INFLOW:
        if mass_value >= control.upper - atol:
            return _flip(ctrl, mass_value, time, CrossingDirection.REACHED_UPPER)
    else:
        if mass_value <= control.lower + atol:
            return _flip(ctrl, mass_value, time, CrossingDirection.REACHED_LOWER)
    return ctrl, ctrl.phase


def _flip(
    ctrl: ControllerState,
    mass_value: float,
    time: float,
    direction: CrossingDirection,
) -> tuple[ControllerState, FluxSign]:
    event = SwitchEvent(
        index=ctrl.next_index,
        time=time,
        mass_at_switch=mass_value,
        direction=direction,
    )
    flipped = ctrl.phase.flipped()
    new = ControllerState(
        phase=flipped,
        events=ctrl.events + (event,),
        next_index=ctrl.next_index + 1,
    )
    return new, flipped
