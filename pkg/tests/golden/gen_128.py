def derive(entries):
    return entries[::-1]
