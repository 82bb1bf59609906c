"""HTTP API over the moments and field commands."""
