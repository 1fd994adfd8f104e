"""Test package for the command-line front end"""
