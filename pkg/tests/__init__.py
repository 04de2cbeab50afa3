"""Tests for skasp."""
