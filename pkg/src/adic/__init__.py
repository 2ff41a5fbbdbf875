"""Exact computations with adic systems, Koszul towers, Tor and adic flatness."""
