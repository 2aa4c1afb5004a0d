"""Schatten-norm matrix sparsification: hard instances, vector promotion and checks."""

from .attacks import attack_topk, attack_uniform, attack_weighted, evaluate, sweep
from .instances import (HardInstance, build_case1, build_case2, build_case3, build_case4,
                        build_instance, load_instance, save_instance, vector_counterexample)
from .matrices import (all_ones, block_diagonal, hadamard, head, identity, kronecker, nnz,
                       single_entry, tail)
from .mtxio import read_matrix, write_matrix
from .spectra import (INF, ZERO, SchattenExponent, Spectrum, lp_norm, numerical_rank,
                      schatten_norm, singular_values, svd)
from .verify import (check_block_pinching, check_holder_vectors, check_instance, check_pinching,
                     check_rotfeld, check_sparsifier, check_spectral_to_schatten,
                     make_spectral_approx)
from .vectors import extra_budget, min_lp_sparsity, promote_sparsifier, tail_bound

__version__ = "0.1.0"
