"""Schur positivity of sums of power-sum symmetric functions over conjugacy classes.

Modules:

* :mod:`psipos.partitions`: partitions, revlex and dominance order, counting statistics;
* :mod:`psipos.characters`: exact character tables of symmetric groups;
* :mod:`psipos.symfun`: Schur and power-sum vectors, basis change, plethysm;
* :mod:`psipos.models`: class sums, orbit characteristics, hook sums, multiplicity checks;
* :mod:`psipos.closed_forms`: literal Schur expansions checked against the engine;
* :mod:`psipos.lab`: positivity claims and negative controls with verdict reports;
* :mod:`psipos.census`: counting non-positive subset sums (numba kernels with numpy fallback);
* :mod:`psipos.fixtures`: golden table files;
* :mod:`psipos.cli`: the ``psipos`` command.
"""

from .characters import CapacityError, CharacterTable, full_table
from .models import epsilon_interval, hk, psi_interval, psi_n
from .partitions import Partition, format_partition, parse_partition, partitions_of
from .symfun import PowerVector, SchurVector, is_schur_positive, power_to_schur, schur_to_power

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CharacterTable",
    "Partition",
    "PowerVector",
    "SchurVector",
    "epsilon_interval",
    "format_partition",
    "full_table",
    "hk",
    "is_schur_positive",
    "parse_partition",
    "partitions_of",
    "power_to_schur",
    "psi_interval",
    "psi_n",
    "schur_to_power",
]
