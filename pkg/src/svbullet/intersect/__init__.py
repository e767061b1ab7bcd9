"""Products of cycles: ruled join, SV runs, the bullet product and local numbers."""

from svbullet.intersect.bullet import BulletReport, Component, bullet, bullet_direct_linear, classify_fixed_moving
from svbullet.intersect.join import LinearSystem, diagonal_pullback, diagonal_system, ruled_join
from svbullet.intersect.local import EpsilonTable, PolarResult, epsilon, polar_self_intersection_oracle
from svbullet.intersect.sv import SVOutput, sv, sv_mass_check

__all__ = [
    "BulletReport",
    "Component",
    "EpsilonTable",
    "LinearSystem",
    "PolarResult",
    "SVOutput",
    "bullet",
    "bullet_direct_linear",
    "classify_fixed_moving",
    "diagonal_pullback",
    "diagonal_system",
    "epsilon",
    "polar_self_intersection_oracle",
    "ruled_join",
    "sv",
    "sv_mass_check",
]
