"""Prisoners' dilemma between two firms under pressure from a third player."""

from .advisor import Interval, Recommendation, RecommendationKind, advise, commitment_interval, thresholds
from .attacker import (
    AttackerParameters,
    AttackPlan,
    DegenerateObjective,
    Regime,
    RegimeAnalysis,
    RegionOptimum,
    attacker_payoff,
    optimize_attack,
    regime_analysis,
)
from .equilibrium import (
    DegenerateGame,
    EquilibriumSet,
    MixedEquilibrium,
    RegionBoundaries,
    RegionDiagram,
    RegionLabel,
    classify_region,
    mixed_equilibrium,
    played_equilibrium,
    pure_equilibria,
    region_boundaries,
    region_diagram,
)
from .game import (
    WORKED_EXAMPLE,
    AttackLevels,
    AttackOutOfRange,
    Bimatrix,
    GameParameters,
    NegativeCost,
    NotPrisonersDilemma,
    Profile,
    base_bimatrix,
    pressured_bimatrix,
    validate_parameters,
)

__all__ = [name for name in dir() if not name.startswith("_")]
