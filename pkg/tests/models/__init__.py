"""Test package for document models"""
