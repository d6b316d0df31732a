"""
cdgor - cd-Indices and Gorenstein* Realizations

Exact-arithmetic tools for graded posets and simplicial complexes:

- poset: graded posets, intervals, joins, zipping and unzipping
- simplicial: order complexes, links, edge subdivisions, f/h/γ-vectors
- flagvec: flag f/h-vectors, ab-index, cd-index, d-vectors
- homology: integer homology and homology-sphere certification
- realize: constructions for rank-5 cd-indices, rank-5/6 d-vectors and
  flag 4-spheres with a prescribed γ-vector
- grid, export, cli: acceptance grids, canonical JSON files, command line
"""

__version__ = "1.0.0"
