"""Test package for generators module"""
