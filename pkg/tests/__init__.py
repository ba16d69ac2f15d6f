"""Unit test package for simplicial-contextuality."""
