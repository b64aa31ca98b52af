import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="autostruct",
    version="0.1.0",
    description="Automatic structures of polynomial growth: automata, presentations, cells and equivalence structures",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["examples", "examples.*"]),
    install_requires=[
        "click>=7.0",
        "networkx>=2.5",
        "sympy>=1.7",
    ],
    extras_require={
        "test": ["hypothesis>=5.0"],
    },
    entry_points={
        "console_scripts": ["autostruct = autostruct.cli.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8',
)
