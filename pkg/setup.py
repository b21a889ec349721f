from setuptools import setup, find_packages

setup(
    name='schreierlab',
    version='0.1.0',
    description='Diameters of random Schreier graphs of transitive group actions,\
        with Monte Carlo checks of the growth lemmas behind them.',
    long_description=open('README.md', encoding='utf-8').read(),
    long_description_content_type='text/markdown',
    packages=find_packages(include=['schreierlab', 'schreierlab.*']),
    install_requires=open('requirements.txt', encoding='utf-8').read().splitlines(),
    entry_points={
        'console_scripts': [
            'schreier-lab=schreierlab.main:main',
        ],
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.10',
)
