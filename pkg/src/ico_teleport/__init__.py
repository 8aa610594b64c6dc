"""
ICO Teleport - Simulate nonlocal controlled-unitary gate teleportation with
quantum switches (indefinite causal order), from the abstract protocol down
to a Jones-calculus model of the optics.
"""

__version__ = "0.1.0"
