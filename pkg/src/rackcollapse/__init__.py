"""Rack collapse checks and abelian-subrack braidings for Suzuki and small Ree groups."""

__version__ = "0.1.0"

SCHEMA = "rack-collapse/1"
