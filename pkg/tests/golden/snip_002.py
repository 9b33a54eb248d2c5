def trim(a_param):
    return a_param.strip()
