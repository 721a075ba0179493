# coding: utf-8

# # The command line

# Every subcommand prints JSON by default. `main` also takes an argument list,
# which is handy from Python.

# In[1]:

import io

from wronskforms.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    print("exit", code)
    print(out.getvalue())


# In[2]:

run("fv", "affine", "--level", "8", "--decompose", "--zeros", "--terms", "30", "--format", "plain")


# The table of levels 1 to 11 as markdown.

# In[3]:

run("table", "--kmax", "11", "--format", "markdown")


# The acceptance suite, restricted to a couple of criteria.

# In[4]:

run("suite", "--only", "4", "8", "--format", "plain")
