"""Nil-structure of finite rings."""
