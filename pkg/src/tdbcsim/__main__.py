"""Module entry point: python -m tdbcsim <command> ..."""

from .scenario_cli import entry_point

if __name__ == "__main__":
    entry_point()
