"""Command-line surface: compute, fusion, table, selfcheck and cache."""
