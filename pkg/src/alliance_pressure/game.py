"""Two-firm alliance game, with and without third-party pressure."""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum
from typing import Dict, Tuple

from .scalar import Scalar, ScalarLike, to_scalar


class GameError(ValueError):
    """Base class for invalid game inputs."""


class NotPrisonersDilemma(GameError):
    pass


class NegativeCost(GameError):
    pass


class AttackOutOfRange(GameError):
    pass


class Action(str, Enum):
    ALLY = "A"
    FIGHT = "F"


class Profile(str, Enum):
    """Pure action profile; first letter is player 1's action."""

    AA = "AA"
    AF = "AF"
    FA = "FA"
    FF = "FF"

    @classmethod
    def of(cls, a1: Action, a2: Action) -> "Profile":
        return cls(a1.value + a2.value)

    def action(self, player: int) -> Action:
        return Action(self.value[player - 1])

    def deviate(self, player: int) -> "Profile":
        """Profile reached when ``player`` switches action."""
        return _DEVIATIONS[self, player]

    def swapped(self) -> "Profile":
        return Profile(self.value[::-1])


_FLIP = {"A": "F", "F": "A"}
_DEVIATIONS = {
    (p, i): Profile(_FLIP[p.value[0]] + p.value[1] if i == 1 else p.value[0] + _FLIP[p.value[1]])
    for p in Profile
    for i in (1, 2)
}


@dataclass(frozen=True)
class GameParameters:
    """Economic constants of the base game.

    ``l`` is half the market value, ``v`` the share moved by a one-sided
    attack, ``x`` the extra cost of operating alone, ``f`` the cost of
    fighting, ``c`` the per-unit cost of being attacked by the third player
    and ``y`` the extra per-unit attack cost outside an alliance.
    """

    l: Scalar
    v: Scalar
    x: Scalar
    f: Scalar
    c: Scalar
    y: Scalar

    @classmethod
    def from_values(cls, **kw: ScalarLike) -> "GameParameters":
        names = {fl.name for fl in fields(cls)}
        unknown = set(kw) - names
        if unknown:
            raise GameError(f"unknown game parameter(s): {sorted(unknown)}")
        missing = names - set(kw)
        if missing:
            raise GameError(f"missing game parameter(s): {sorted(missing)}")
        return cls(**{k: to_scalar(v) for k, v in kw.items()})

    def with_l(self, l: ScalarLike) -> "GameParameters":
        return GameParameters(to_scalar(l), self.v, self.x, self.f, self.c, self.y)


@dataclass(frozen=True)
class AttackLevels:
    q1: Scalar
    q2: Scalar

    @classmethod
    def of(cls, q1: ScalarLike, q2: ScalarLike) -> "AttackLevels":
        return cls(to_scalar(q1), to_scalar(q2))

    def __iter__(self):
        yield self.q1
        yield self.q2

    def swapped(self) -> "AttackLevels":
        return AttackLevels(self.q2, self.q1)

    def of_player(self, player: int) -> Scalar:
        return self.q1 if player == 1 else self.q2


def validate_parameters(raw: GameParameters) -> GameParameters:
    if not raw.v > raw.x:
        raise NotPrisonersDilemma(f"requires v > x (got v={raw.v}, x={raw.x})")
    if not raw.v > raw.f:
        raise NotPrisonersDilemma(f"requires v > f (got v={raw.v}, f={raw.f})")
    for name in ("x", "f", "c", "y"):
        if getattr(raw, name) < 0:
            raise NegativeCost(f"requires {name} >= 0 (got {name}={getattr(raw, name)})")
    return raw


def validate_attack(attack: AttackLevels) -> AttackLevels:
    for name, q in (("q1", attack.q1), ("q2", attack.q2)):
        if not 0 <= q <= 1:
            raise AttackOutOfRange(f"requires 0 <= {name} <= 1 (got {name}={q})")
    return attack


@dataclass(frozen=True)
class Bimatrix:
    """Payoff pair for each of the four pure profiles."""

    entries: Tuple[Tuple[Profile, Scalar, Scalar], ...]

    def __post_init__(self):
        object.__setattr__(self, "_lookup", {(p, i): u for p, u1, u2 in self.entries for i, u in ((1, u1), (2, u2))})

    @classmethod
    def from_dict(cls, table: Dict[Profile, Tuple[Scalar, Scalar]]) -> "Bimatrix":
        if set(table) != set(Profile):
            raise GameError("bimatrix needs all four profiles")
        return cls(tuple((p, Scalar(table[p][0]), Scalar(table[p][1])) for p in Profile))

    def payoff(self, profile: Profile, player: int) -> Scalar:
        return self._lookup[profile, player]

    def pair(self, profile: Profile) -> Tuple[Scalar, Scalar]:
        return self.payoff(profile, 1), self.payoff(profile, 2)

    def as_dict(self) -> Dict[Profile, Tuple[Scalar, Scalar]]:
        return {p: (u1, u2) for p, u1, u2 in self.entries}

    def swap_players(self) -> "Bimatrix":
        """Relabel player 1 as player 2 (and swap the action order)."""
        return Bimatrix.from_dict({p.swapped(): (u2, u1) for p, u1, u2 in self.entries})


def base_bimatrix(params: GameParameters) -> Bimatrix:
    l, v, x, f = params.l, params.v, params.x, params.f
    return Bimatrix.from_dict(
        {
            Profile.AA: (l, l),
            Profile.AF: (l - v - x, l + v - x),
            Profile.FA: (l + v - x, l - v - x),
            Profile.FF: (l - x - f, l - x - f),
        }
    )


def pressured_bimatrix(params: GameParameters, attack: AttackLevels) -> Bimatrix:
    """Payoffs when the third player presses with ``attack``.

    In an alliance the attack costs are pooled; outside it each firm pays
    its own ``q_i * (c + y)`` and loses a ``q_i`` share of what it holds.
    """
    validate_attack(attack)
    l, v, x, f, c, y = params.l, params.v, params.x, params.f, params.c, params.y
    q1, q2 = attack.q1, attack.q2
    shared = c / 2 * (q1 + q2)
    return Bimatrix.from_dict(
        {
            Profile.AA: (l - l * q1 - shared, l - l * q2 - shared),
            # the allying firm holds l - v, the fighting one l + v
            Profile.AF: (l - v - x - q1 * (l - v + c + y), l + v - x - q2 * (l + v + c + y)),
            Profile.FA: (l + v - x - q1 * (l + v + c + y), l - v - x - q2 * (l - v + c + y)),
            Profile.FF: (l - x - f - q1 * (l + c + y), l - x - f - q2 * (l + c + y)),
        }
    )


WORKED_EXAMPLE = GameParameters.from_values(l=8, v=5, x=2, f=2, c=3, y=2)
