# Nichols 工具包 - 源码包
