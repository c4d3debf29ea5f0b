"""Finite-quotient separation certificates for free products of finite groups.

Given finite groups G and H presented as Cayley tables, this package
builds finite matrix quotients of the free product in which a chosen
element's order exceeds any requested bound, and packages the result as
replayable JSON certificates. The same machinery produces, for any
candidate coproduct (F, iota_G, iota_H) in the category of finite
groups, an order-obstruction certificate showing that no mediating
homomorphism exists.
"""

__version__ = "0.1.0"
