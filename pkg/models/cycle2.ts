ts
states s0 s1
letters a
trans s0 a s1
trans s1 a s0
