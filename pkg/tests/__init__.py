"""Tests for rip-jl-embed."""
