from setuptools import setup

setup(name='hopftwist',
      version='0.1',
      description='Integrals, torsors and twisted symmetric bundles of finite Hopf algebras',
      classifiers=[
          'Development Status :: 3 - Alpha',
          'License :: OSI Approved :: MIT License',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Mathematics'
      ],
      license='MIT',
      packages=['hopftwist'],
      install_requires=['celery', 'numpy', 'progressbar2', 'pyyaml', 'sympy', 'tabulate'],
      entry_points={'console_scripts': ['hopftwist=hopftwist.runner:main']},
      zip_safe=False)
