"""Grounding and solving of sketch-free programs."""
