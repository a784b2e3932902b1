"""
Bonsai - hardware-tailored fermion-to-qubit mappings from ternary trees
"""

__version__ = "1.0.0"
