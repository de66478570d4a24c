# Utilities package 