"""Rebuild the frozen regression reports in tests/data.

Run by hand only when a change to report contents is intended:
    python3 tests/regen_data.py
"""

from pathlib import Path

from gracetree.search import explore_case2b, hunt_generalized_perms, verify_lemma2_part1

DATA = Path(__file__).parent / "data"

FROZEN = {
    "lemma2_n12.json": lambda: verify_lemma2_part1(12),
    "case2b_n14.json": lambda: explore_case2b(14),
    "hunt_any-pm_n6.json": lambda: hunt_generalized_perms(6),
    "hunt_any-pm_n8.json": lambda: hunt_generalized_perms(8),
}

if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    for name, build in FROZEN.items():
        (DATA / name).write_text(build().to_json())
        print("wrote", name)
