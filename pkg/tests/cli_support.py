"""Shared CLI harness for tests and golden-file regeneration.

Run ``python tests/cli_support.py regen`` after an intentional output change
to refresh ``tests/golden/``; the golden test then pins byte-identical output.
"""

from __future__ import annotations

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

from starmono.cli import main

GOLDEN_DIR = Path(__file__).parent / "golden"

# name -> (argv with {G} placeholders resolved against GOLDEN_DIR, expected exit code)
COMMANDS: list[tuple[str, list[str], int]] = [
    ("example_quartic", ["example", "quartic"], 0),
    ("example_quartic_pretty", ["example", "quartic", "--pretty"], 0),
    ("example_degenerate_seifert", ["example", "degenerate-seifert"], 0),
    ("gen_q_tuple", ["gen", "--ring", "Q", "--t", "3", "--sizes", "2,2,1", "--seed", "42"], 0),
    ("gen_z_torsion", ["gen", "--ring", "Z", "--sizes", "2,1", "--seed", "7", "--torsion"], 0),
    ("gen_f5", ["gen", "--ring", "Fp:5", "--sizes", "2,2", "--seed", "9"], 0),
    ("gen_zn6", ["gen", "--ring", "Zn:6", "--sizes", "1,2", "--seed", "11"], 0),
    ("gen_seifert", ["gen", "--ring", "Z", "--seed", "13", "--payload", "seifert", "--sizes", "3"], 0),
    (
        "gen_sequence",
        ["gen", "--ring", "Z", "--sizes", "1,1", "--seed", "3", "--torsion", "--payload", "sequence"],
        0,
    ),
    ("compose_q", ["compose", "--in", "{G}/gen_q_tuple.json"], 0),
    ("reconstruct_q", ["reconstruct", "--in", "{G}/compose_q.json"], 0),
    ("verify_quartic", ["verify", "--in", "{G}/example_quartic.json"], 0),
    ("verify_q", ["verify", "--in", "{G}/gen_q_tuple.json"], 0),
    ("invariants_q", ["invariants", "--in", "{G}/gen_q_tuple.json"], 0),
    ("invariants_z_torsion", ["invariants", "--in", "{G}/gen_z_torsion.json"], 0),
    ("dualize_q", ["dualize", "--in", "{G}/gen_q_tuple.json"], 0),
    ("dualize_quartic_refused", ["dualize", "--in", "{G}/example_quartic.json"], 3),
    ("seqcheck", ["seqcheck", "--in", "{G}/gen_sequence.json"], 0),
    ("seifert_lm", ["seifert", "--in", "{G}/gen_seifert.json"], 0),
    ("seifert_degenerate_flagged", ["seifert", "--in", "{G}/example_degenerate_seifert.json"], 0),
]


def run_cli(argv: list[str], stdin_text: str | None = None) -> tuple[int, str]:
    argv = [a.replace("{G}", str(GOLDEN_DIR)) for a in argv]
    buf = io.StringIO()
    old_stdin = sys.stdin
    try:
        if stdin_text is not None:
            sys.stdin = io.StringIO(stdin_text)
        with redirect_stdout(buf):
            code = main(argv)
    finally:
        sys.stdin = old_stdin
    return code, buf.getvalue()


def regenerate() -> None:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv, expected in COMMANDS:
        code, out = run_cli(argv)
        if code != expected:
            raise SystemExit(f"{name}: exit {code}, expected {expected}")
        (GOLDEN_DIR / f"{name}.json").write_text(out, encoding="utf-8")
        print(f"wrote {name}.json ({len(out)} bytes, exit {code})")


if __name__ == "__main__":
    if len(sys.argv) == 2 and sys.argv[1] == "regen":
        regenerate()
    else:
        print(__doc__)
