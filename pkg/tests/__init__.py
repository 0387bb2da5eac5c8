"""Unit test package for sumfreetools."""
