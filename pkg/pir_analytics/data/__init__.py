"""Packaged datasets"""
