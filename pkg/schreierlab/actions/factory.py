import logging
import math
from typing import Union
from sympy import prevprime
from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.family_spec import FamilyName, FamilySpec, parse_family_spec
from schreierlab.actions.families.affine import AffineAction
from schreierlab.actions.families.cyclic import AbelianPowerAction, CyclicAction
from schreierlab.actions.families.dihedral import DihedralAction
from schreierlab.actions.families.projective import ProjectiveAction
from schreierlab.actions.families.symmetric import SymmetricAction, TuplesAction
from schreierlab.errors import InvalidFamilyParams

logger = logging.getLogger(__name__)

class ActionFactory:
    @staticmethod
    def create(spec: FamilySpec) -> BaseAction:
        if spec.family == FamilyName.SYMMETRIC:
            return SymmetricAction(spec)
        elif spec.family == FamilyName.SYMMETRIC_TUPLES:
            return TuplesAction(spec)
        elif spec.family == FamilyName.CYCLIC:
            return CyclicAction(spec)
        elif spec.family == FamilyName.ABELIAN:
            return AbelianPowerAction(spec)
        elif spec.family == FamilyName.DIHEDRAL:
            return DihedralAction(spec)
        elif spec.family == FamilyName.AFFINE:
            return AffineAction(spec)
        elif spec.family == FamilyName.PROJECTIVE:
            return ProjectiveAction(spec)
        raise InvalidFamilyParams(f"Unknown family: {spec.family}")


def build_action(spec: Union[FamilySpec, str]) -> BaseAction:
    """Build the action for a FamilySpec or its command-line string"""
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    action = ActionFactory.create(spec)
    logger.debug("Built %s with log|G| = %.3f", action, action.group_order_log)
    return action


def family_for_degree(family: Union[FamilyName, str], n: int) -> FamilySpec:
    """
    Parameters of `family` giving the largest attainable degree <= n.

    Used when one family is scaled over a grid of degrees; abelian uses m=2.
    """
    family = FamilyName(family)
    if family in (FamilyName.SYMMETRIC, FamilyName.CYCLIC, FamilyName.DIHEDRAL):
        if n < 1:
            raise InvalidFamilyParams(f"no {family.value} action of degree <= {n}")
        key = "n" if family == FamilyName.SYMMETRIC else "m"
        return FamilySpec.of(family, **{key: n})
    if family == FamilyName.SYMMETRIC_TUPLES:
        n0 = math.isqrt(n) + 1
        while n0 * (n0 - 1) > n:
            n0 -= 1
        if n0 < 2:
            raise InvalidFamilyParams(f"no sym-tuples action of degree <= {n}")
        return FamilySpec.of(family, n=n0, r=2)
    if family == FamilyName.ABELIAN:
        if n < 2:
            raise InvalidFamilyParams(f"no abelian action of degree <= {n}")
        return FamilySpec.of(family, m=2, d=n.bit_length() - 1)
    bound = n if family == FamilyName.AFFINE else n - 1
    if bound < 2:
        raise InvalidFamilyParams(f"no {family.value} action of degree <= {n}")
    prime = prevprime(bound + 1)
    return FamilySpec.of(family, p=int(prime))
