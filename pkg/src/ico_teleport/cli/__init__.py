"""
CLI module for ICO Teleport.
"""

from ico_teleport.cli.main import cli

__all__ = ["cli"]
