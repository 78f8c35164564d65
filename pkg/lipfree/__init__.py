"""
Exact Lipschitz-free norms and equivalence witnesses for finite pointed
metric spaces
"""
