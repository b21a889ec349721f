"""
Family names and the `name:key=val[,key=val]*` grammar used on the command line.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

from schreierlab.errors import InvalidFamilyParams


class FamilyName(Enum):
    SYMMETRIC = "sym"
    SYMMETRIC_TUPLES = "sym-tuples"
    CYCLIC = "cyclic"
    ABELIAN = "abelian"
    DIHEDRAL = "dihedral"
    AFFINE = "affine"
    PROJECTIVE = "proj"


# parameter keys in canonical order, and a one-line description for `info`
FAMILY_PARAMS: Dict[FamilyName, Tuple[str, ...]] = {
    FamilyName.SYMMETRIC: ("n",),
    FamilyName.SYMMETRIC_TUPLES: ("n", "r"),
    FamilyName.CYCLIC: ("m",),
    FamilyName.ABELIAN: ("m", "d"),
    FamilyName.DIHEDRAL: ("m",),
    FamilyName.AFFINE: ("p",),
    FamilyName.PROJECTIVE: ("p",),
}

FAMILY_DESCRIPTIONS: Dict[FamilyName, str] = {
    FamilyName.SYMMETRIC: "Sym(n) on n points",
    FamilyName.SYMMETRIC_TUPLES: "Sym(n) on ordered r-tuples of distinct points, degree n(n-1)...(n-r+1)",
    FamilyName.CYCLIC: "Z_m acting regularly on itself",
    FamilyName.ABELIAN: "(Z_m)^d acting regularly on itself, degree m^d",
    FamilyName.DIHEDRAL: "dihedral group of order 2m on the m vertices of an m-gon",
    FamilyName.AFFINE: "AGL(1,p), x -> ax+b on F_p, p prime",
    FamilyName.PROJECTIVE: "PGL(2,p) on the projective line, degree p+1, p prime",
}


@dataclass(frozen=True)
class FamilySpec:
    family: FamilyName
    params: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, family: FamilyName, **params: int) -> "FamilySpec":
        keys = FAMILY_PARAMS[family]
        if set(params) != set(keys):
            raise InvalidFamilyParams(
                f"{family.value} takes parameters {', '.join(keys)}, got {', '.join(sorted(params))}"
            )
        return cls(family, tuple((key, int(params[key])) for key in keys))

    def get(self, key: str) -> int:
        return dict(self.params)[key]

    def __str__(self) -> str:
        args = ",".join(f"{key}={value}" for key, value in self.params)
        return f"{self.family.value}:{args}"


def grammar(family: FamilyName) -> str:
    """Usage string for one family, e.g. `abelian:m=M,d=D`"""
    args = ",".join(f"{key}={key.upper()}" for key in FAMILY_PARAMS[family])
    return f"{family.value}:{args}"


def parse_family_spec(text: str) -> FamilySpec:
    """Parse `name:key=val[,key=val]*` into a FamilySpec"""
    name, sep, body = text.strip().partition(':')
    try:
        family = FamilyName(name)
    except ValueError as e:
        known = ", ".join(f.value for f in FamilyName)
        raise InvalidFamilyParams(f"unknown family '{name}' (known: {known})") from e
    if not sep or not body:
        raise InvalidFamilyParams(f"missing parameters, expected {grammar(family)}")

    params: Dict[str, int] = {}
    for item in body.split(','):
        key, eq, value = item.partition('=')
        key = key.strip()
        if not eq or not key:
            raise InvalidFamilyParams(f"bad parameter '{item}', expected key=value")
        if key in params:
            raise InvalidFamilyParams(f"parameter '{key}' given twice")
        try:
            params[key] = int(value)
        except ValueError as e:
            raise InvalidFamilyParams(f"parameter '{key}' must be an integer, got '{value}'") from e
    return FamilySpec.of(family, **params)
