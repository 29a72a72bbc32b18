"""Exact GF(2) filtered cochain complexes for radial Floer-type models.

Modules: ``gf2`` (bitset linear algebra), ``filtered`` (complexes, windows,
barcodes), ``chain_maps``, ``radial`` (profiles and orbit inventories),
``spectral`` (spectral invariants), ``colimit`` (cofinal diagrams and the SH
capacity), ``config``/``serialize`` (documents) and ``cli``.
"""
__version__ = "0.1.0"
