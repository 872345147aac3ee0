"""Unit tests for Vermont Signal V2"""
