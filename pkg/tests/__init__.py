"""Tests for packet_multipoles."""
