from .sparse import TripletBuilder, compile_triplets, matvec
from .solver import DIRECT, KRYLOV, Factorization, factorize, solve

__all__ = [
    'TripletBuilder',
    'compile_triplets',
    'matvec',
    'Factorization',
    'factorize',
    'solve',
    'DIRECT',
    'KRYLOV',
]
