"""Computational services: groups, roots of unity, forms, module categories and S-matrices"""
