"""API package for fusion2s"""
