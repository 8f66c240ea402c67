#!/usr/bin/env python
"""
Setup script for the Verlinde number calculator
Cache directory creation and environment validation
"""

import sys
from pathlib import Path

from dotenv import dotenv_values


def create_directories(cache_dir: Path):
    """Create the fusion memo directory."""
    cache_dir.mkdir(parents=True, exist_ok=True)
    print(f"✓ Created directory: {cache_dir}")


def check_environment() -> dict:
    """Read .env if present and report the VERLINDE_* settings it overrides."""
    env_file = Path(".env")
    example_file = Path(".env.example")

    if not env_file.exists():
        if example_file.exists():
            print(f"ℹ️  No {env_file}; defaults apply (see {example_file})")
        return {}

    values = {key: value for key, value in dotenv_values(env_file).items() if key.startswith("VERLINDE_")}
    unknown = sorted(set(values) - {"VERLINDE_CACHE_DIR", "VERLINDE_LOG_LEVEL", "VERLINDE_LOG_FORMAT"})
    if unknown:
        print(f"⚠️  Unknown settings in {env_file}: {', '.join(unknown)}")
    print(f"✓ Environment file found: {env_file}")
    return values


def check_imports() -> bool:
    """Confirm the numerical stack is importable."""
    missing = []
    for module in ("numpy", "mpmath", "pandas", "pydantic", "pydantic_settings", "structlog", "jsonschema"):
        try:
            __import__(module)
        except ImportError:
            missing.append(module)
    if missing:
        print(f"❌ Missing packages: {', '.join(missing)} (pip install -r requirements.txt)")
        return False
    print("✓ Dependencies importable")
    return True


def main():
    """Main setup function."""
    print("🚀 Setting up the Verlinde number calculator...")
    print()

    values = check_environment()
    create_directories(Path(values.get("VERLINDE_CACHE_DIR") or "data/cache"))
    print()

    if not check_imports():
        sys.exit(1)
    print()

    print("✅ Setup complete! You can now run:")
    print("   python -m src.cli.main compute --genus 1 --rank 2 --level 2")
    print("   python -m src.cli.main selfcheck")


if __name__ == "__main__":
    main()
