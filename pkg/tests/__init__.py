if __name__ == '__main__':
    import glob
    import unittest
    test_files = sorted(glob.glob('test_*.py'))
    suites = [unittest.defaultTestLoader.loadTestsFromName(name[:-3])
              for name in test_files]
    unittest.TextTestRunner(verbosity=2).run(unittest.TestSuite(suites))
