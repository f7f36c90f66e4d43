"""Configuration package for rip-jl-embed."""
