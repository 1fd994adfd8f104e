"""Pydantic documents for category input and reports"""
