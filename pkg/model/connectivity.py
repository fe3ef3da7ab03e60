"""

Connectivity formulas for spaces of flat U(n)-connections over aspherical
surfaces and for the classifying map B: Hom(pi_1 S, U(n)) -> Map_*(S, BU(n)).

Orientable M^g:
    flat connections      precisely 2g(n-1)-connected
    B                     precisely (1, 2g(n-1)+1)-connected
Non-orientable with q crosscaps, double cover of genus gt = q - 1:
    flat connections      at least (gt(n-1) - 1)-connected,
                          precisely (2 n gt - 3 gt - 1)-connected when gt > 1 and n >= 9
    B                     at least gt(n-1)-connected

"""


from dataclasses import dataclass

from typing import List, Optional, Tuple

import pandas as pd

from model.group_kdef import NonOrientable, Orientable, Surface, expr_to_text


SHARP_MIN_RANK = 9


@dataclass(frozen=True)
class ConnectivityRecord:
    surface: str
    n: int
    connection_space: int
    connection_space_sharp: bool
    classifying_map: Tuple[int, ...]
    classifying_map_sharp: bool
    non_orientable_sharp: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "n": self.n,
            "connection_space": self.connection_space,
            "connection_space_sharp": self.connection_space_sharp,
            "classifying_map": list(self.classifying_map),
            "classifying_map_sharp": self.classifying_map_sharp,
            "non_orientable_sharp": self.non_orientable_sharp,
        }


def connectivity_bounds(surface: Surface, n: int) -> ConnectivityRecord:
    """evaluate the connectivity formulas for U(n) and one aspherical surface

    Parameters
    ----------
    surface : Orientable or NonOrientable
        the surface, spheres and the projective plane are rejected upstream
    n : int
        rank of the unitary group, at least 1

    Returns
    -------
    record : ConnectivityRecord
        classifying_map holds (l, k) for an (l, k)-connected map in the
        orientable case and (k,) otherwise; non_orientable_sharp is only set
        inside the range where the sharp non-orientable formula is known

    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")

    if isinstance(surface, Orientable):
        g = surface.g
        return ConnectivityRecord(
            surface=expr_to_text(surface),
            n=n,
            connection_space=2 * g * (n - 1),
            connection_space_sharp=True,
            classifying_map=(1, 2 * g * (n - 1) + 1),
            classifying_map_sharp=True,
        )
    if isinstance(surface, NonOrientable):
        gt = surface.k
        sharp = None
        if gt > 1 and n >= SHARP_MIN_RANK:
            sharp = 2 * n * gt - 3 * gt - 1
        return ConnectivityRecord(
            surface=expr_to_text(surface),
            n=n,
            connection_space=gt * (n - 1) - 1,
            connection_space_sharp=False,
            classifying_map=(gt * (n - 1),),
            classifying_map_sharp=False,
            non_orientable_sharp=sharp,
        )
    raise ValueError(
        f"connectivity formulas are stated for single surfaces, got {surface!r}"
    )


def connectivity_table(surface: Surface, ranks: List[int]) -> pd.DataFrame:
    rows = [connectivity_bounds(surface, n).to_dict() for n in ranks]
    frame = pd.DataFrame(rows)
    frame["classifying_map"] = frame["classifying_map"].map(
        lambda values: "(" + ", ".join(str(v) for v in values) + ")"
    )
    return frame
