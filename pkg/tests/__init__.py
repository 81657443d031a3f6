from .test_generator import TestGenerator
