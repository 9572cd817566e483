#!/usr/bin/env python
"""
    avsdf: direction finding of polynomial-phase sources with a single
    acoustic vector sensor.
"""

from setuptools import find_packages, setup

CLASSIFIERS = [
    'Development Status :: 3 - Alpha',
    'Programming Language :: Python',
    'Programming Language :: Python :: 3',
    'Topic :: Scientific/Engineering',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Topic :: Scientific/Engineering :: Physics',
    'Intended Audience :: Science/Research',
    'Operating System :: Microsoft :: Windows',
    'Operating System :: POSIX',
    'Operating System :: Unix',
    'Operating System :: MacOS',
    'Natural Language :: English',
]

with open('README.rst') as f:
    LONG_DESCRIPTION = ''.join(f.readlines())

EXTRAS = {
    'test': ['pytest>=4.6', 'pytest-cov', 'scipy'],
    'docs': ['sphinx'],
}
EXTRAS.update({'full': sum(EXTRAS.values(), [])})
setup(
    name='avsdf',
    version='0.1.0',
    packages=find_packages(exclude=('tests',)),
    install_requires=[
        'numpy>=1.17',
        'properties[math]>=0.6.1',
        'six>=1.7.3',
        'vectormath>=0.1.4',
    ],
    extras_require=EXTRAS,
    entry_points={
        'console_scripts': ['avsdf = avsdf.cli:main'],
    },
    author='avsdf developers',
    description=('avsdf: recursive dephasing, ESPRIT and forgetting-factor '
                 'tracking for acoustic vector sensors'),
    long_description=LONG_DESCRIPTION,
    keywords='direction of arrival, acoustic vector sensor, esprit, '
             'polynomial phase, cramer-rao bound',
    classifiers=CLASSIFIERS,
    platforms=['Windows', 'Linux', 'Solaris', 'Mac OS-X', 'Unix'],
    python_requires='>=3.6',
)
