"""Synthesis: substitutions, preferences and orchestration."""
