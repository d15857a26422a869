from setuptools import setup, find_packages


deps = [
    "pydantic",
    "numpy",
    "tqdm",
]

extras = {
    "test": ["pytest", "hypothesis"],
    "docs": ["sphinx", "furo", "sphinx-copybutton", "sphinxext-opengraph", "myst-parser"],
}

setup(
    name="hurwitzradon",
    version="0.1.0",
    description="Exact computation and verification of classical and generalized Hurwitz-Radon numbers for matrix Lie group actions.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    license="Apache 2.0 License",
    package_dir={"": "src"},
    packages=find_packages("src"),
    install_requires=deps,
    extras_require=extras,
    python_requires=">=3.9",
    entry_points={"console_scripts": ["hr=hurwitzradon.cli:main"]},
    classifiers=[
        "Intended Audience :: Education",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
