#!/usr/bin/env python3
"""Train the bundled language-identification profiles from the fixture texts.

Reads one plain-text file per language from src/mtconstrain/fixtures/langid/
and writes a trained profile JSON per language into src/mtconstrain/profiles/.
Run from the repository root after editing the fixture texts.
"""
from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mtconstrain.langid import save_profile, train_profile  # noqa: E402

FIXTURES = ROOT / "src" / "mtconstrain" / "fixtures" / "langid"
PROFILES = ROOT / "src" / "mtconstrain" / "profiles"


def main() -> int:
    PROFILES.mkdir(parents=True, exist_ok=True)
    for path in sorted(FIXTURES.glob("*.txt")):
        lang = path.stem
        profile = train_profile(lang, path.read_text(encoding="utf-8"))
        out = save_profile(profile, PROFILES)
        print(f"{lang}: trained on {profile.training_chars} chars -> {out.name}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
