"""skasp completes sketched answer set programs from positive and negative examples.

Installation
------------

.. highlight:: sh
.. code-block:: sh

    pip install skasp

Usage
-----

Synthesize the Hamiltonian cycle sketch bundled with the package:

.. highlight:: py
.. code-block:: py

    from skasp.bench.problems import get_problem
    from skasp.synth.api import SynthOpts, synthesize

    problem = get_problem("hamiltonian")
    result = synthesize(problem.load(), SynthOpts(preferences="none"))
    for theta in result.preferred:
        print(result.programs[theta])

Command line:

.. highlight:: sh
.. code-block:: sh

    skasp synth hamiltonian --prefs=none --backend=internal

"""
import sys

if sys.version_info < (3, 8):
    raise EnvironmentError("Python 3.8 or above is required.")
