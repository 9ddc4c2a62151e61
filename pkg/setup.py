import re

from setuptools import find_packages, setup

with open("qdisttest/__init__.py", encoding="utf-8") as fd:
    for line in fd.readlines():
        m = re.search('__version__ = "(.*)"', line)
        if m:
            version = m.group(1)
            break


install_requires = [
    "numpy==1.*",
    "scipy==1.*",
    "sympy==1.*",
    "torch==2.*",
    "jsonschema==4.*",
    'tomli>=1.1; python_version < "3.11"',
]

test_requires = [
    "pytest",
    "pytest-cov",
]

dev_requires = test_requires + [
    "pre-commit",
    "black",
]

setup(
    name="qdisttest",
    version=version,
    description="qdisttest - query-model entropy estimation and closeness testing of classical and quantum distributions.",
    keywords=[
        "quantum-algorithms",
        "distribution-testing",
        "entropy-estimation",
        "quantum-singular-value-transformation",
        "amplitude-estimation",
        "pytorch",
    ],
    python_requires=">=3.10",
    install_requires=install_requires,
    extras_require={
        "test": test_requires,
        "dev": dev_requires,
    },
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"qdisttest.harness": ["schema/*.json"]},
    include_package_data=True,
    entry_points={"console_scripts": ["qdisttest=qdisttest.harness.cli:main"]},
)
