"""Fast structured transforms with naive reference oracles."""
