from setuptools import setup

with open("README.md", "r") as readme:
    long_description = readme.read()


setup(
    name='padicmax',
    version="0.1.0",
    license='Apache License, Version 2.0',
    author='Michael Bouzinier',
    author_email='mbouzinier@g.harvard.edu',
    description='Exact and certified harmonic analysis on p-adic vector '
                'spaces: maximal operators, commutators and function norms',
    long_description = long_description,
    long_description_content_type = "text/markdown",
    package_dir={
        "padicmax": "./src/python/padicmax"
    },
    packages=["padicmax", "padicmax.tests"],
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent"],
    python_requires='>=3.7',
    install_requires=[
        'numpy',
        'pandas',
        'PyYAML',
        'nsaph_utils >= 0.0.4.2',
        'nsaph>=0.0.2.0',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'padicmax = padicmax.cli:main',
        ],
    },
    package_data = {
        '': ["**/*.yaml", "*.yaml"]
    }
)
