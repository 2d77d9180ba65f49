"""Finite nilpotent monoids built from words: identities, schemes and finite relatedness."""

__version__ = "0.1.0"
