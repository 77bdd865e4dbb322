"""Enlarged periodic Temperley-Lieb diagrams, module families and their fusion."""
