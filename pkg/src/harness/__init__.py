"""Statistical embedding experiments."""
