"""
Triplet contributions to the three system matrices.
"""
from ..linalg.sparse import TripletBuilder


class Contribution:
    """One assembly part: separate builders for M, C and K."""

    def __init__(self, dimension, label=""):
        self.label = label
        self.M = TripletBuilder(dimension)
        self.C = TripletBuilder(dimension)
        self.K = TripletBuilder(dimension)

    def __repr__(self):
        return f"<Contribution {self.label} M={len(self.M)} C={len(self.C)} K={len(self.K)}>"

    def merge_into(self, total):
        total.M.extend(self.M)
        total.C.extend(self.C)
        total.K.extend(self.K)
        return total
