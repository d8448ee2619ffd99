"""Bit-exact golden reports: any byte drift in report output fails here."""

import subprocess
import sys

import pytest

COMMANDS = {
    "validate_e3.txt":      ["validate", "e3.dgres"],
    "validate_e3.json":     ["validate", "e3.dgres", "--format", "machine"],
    "bar_e1_classical.txt": ["bar", "e1.dgres", "--max-n", "3", "--max-degree", "5"],
    "bar_e2_reduced.txt":   ["bar", "e2.dgres", "--reduced", "--max-degree", "6"],
    "semifree_e1.txt":      ["semifree", "e1.dgres", "--max-degree", "6"],
    "homology_e3.txt":      ["homology", "e3.dgres", "--max-degree", "6"],
    "lift_e2_K.txt":        ["lift", "e2.dgres", "--module", "K"],
    "lift_e1_CB.json":      ["lift", "e1.dgres", "--module", "CB", "--format", "machine"],
    "derivations_e2.txt":   ["derivations", "e2.dgres", "--max-degree", "5", "--samples", "10", "--seed", "3"],
}


@pytest.mark.parametrize("fname", sorted(COMMANDS))
def test_golden_output(fname, golden_dir):
    cmd = COMMANDS[fname]
    args = [sys.executable, "-m", "dgres.cli", cmd[0], str(golden_dir / cmd[1])] + cmd[2:]
    proc = subprocess.run(args, capture_output=True)
    assert proc.returncode == 0
    expected = (golden_dir / fname).read_bytes()
    assert proc.stdout == expected
