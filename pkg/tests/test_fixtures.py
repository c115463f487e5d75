from pathlib import Path

from psipos import fixtures
from psipos.models import psi_interval
from psipos.partitions import partitions_of

TABLES = Path(__file__).parent / "fixtures" / "tables"


def test_golden_files_have_no_diffs():
    assert fixtures.check(TABLES) == {}


def test_psi_blocks_cover_every_class():
    small = fixtures.parse_psi_blocks((TABLES / "psi_small.txt").read_text())
    assert len(small) == sum(len(partitions_of(n)) for n in range(1, 6))
    six = fixtures.parse_psi_blocks((TABLES / "psi_six.txt").read_text())
    assert len(six) == 11
    for mu, v in {**small, **six}.items():
        assert psi_interval(mu) == v


def test_missing_file_is_a_diff(tmp_path):
    diffs = fixtures.check(tmp_path)
    assert set(diffs) == {"hooks.txt", "psi_small.txt", "psi_six.txt"}
