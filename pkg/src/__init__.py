"""rip-jl-embed source code."""
