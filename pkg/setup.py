from setuptools import setup


with open("README.md") as fp:
    DESCRIPTION = fp.read()


headline = DESCRIPTION.split("\n", 1)[0].lstrip("# ").rstrip(".")


setup(
    name="lipfree",
    version="0.1",
    description=headline,
    long_description=DESCRIPTION,
    long_description_content_type="text/markdown",
    packages=["lipfree"],
    include_package_data=True,
    license="MIT",
    python_requires=">=3.10",
    install_requires=["sympy>=1.9"],
    entry_points={"console_scripts": ["lipfree = lipfree.__main__:main"]},
    classifiers=[
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
