"""
Infrastructure layer.

Contains implementations of domain protocols:
- Tick-file and descriptor parsing
- Analytics (touch volume, trade signs, imbalance engine, statistics)
- Synthetic market simulation
- Artifact writing
"""
