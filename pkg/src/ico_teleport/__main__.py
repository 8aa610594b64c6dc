"""
Allow running the package as a module: python -m ico_teleport
"""

from ico_teleport.cli.main import cli

if __name__ == "__main__":
    cli()
