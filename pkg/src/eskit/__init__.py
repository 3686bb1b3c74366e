"""Exact chromatic index and chromatic edge stability toolkit."""
