"""Unit test package init"""
